#pragma once

// Fibonacci, Tribonacci and Thue-Morse words, with per-letter prefix tables.
//
// A WordTable stores the first `length` symbols of a word together with, for
// every letter c,
//   count[c][k]  = |w[0..k)|_c
//   count2[c][k] = sum_{x<k} count[c][x]
// The second table turns rectangle letter counts into four lookups.

#include <rectbal/error.hpp>
#include <rectbal/exact_quadratic.hpp>
#include <rectbal/numeration.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rectbal {

enum class SequenceKind {
    Fibonacci,         // f = 0100101001001...
    SturmianA,         // a = 0f: a_0 = 0, a_i = f_{i-1}
    Tribonacci,        // TR = 0102010...
    TribonacciRecoded, // TR with 1 -> 0
    ThueMorse,         // t = 01101001...
};

constexpr std::size_t alphabet_size(SequenceKind kind) noexcept {
    switch (kind) {
    case SequenceKind::Tribonacci:
    case SequenceKind::TribonacciRecoded:
        return 3;
    default:
        return 2;
    }
}

constexpr std::string_view kind_name(SequenceKind kind) noexcept {
    switch (kind) {
    case SequenceKind::Fibonacci: return "fib";
    case SequenceKind::SturmianA: return "sturmian-a";
    case SequenceKind::Tribonacci: return "trib";
    case SequenceKind::TribonacciRecoded: return "trib2";
    case SequenceKind::ThueMorse: return "tm";
    }
    return "?";
}

inline std::optional<SequenceKind> parse_kind(std::string_view name) {
    for (auto k : {SequenceKind::Fibonacci, SequenceKind::SturmianA, SequenceKind::Tribonacci,
                   SequenceKind::TribonacciRecoded, SequenceKind::ThueMorse})
        if (kind_name(k) == name)
            return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Single symbols, each computed without materializing the word.

/// f_i = floor((i+2)gamma) - floor((i+1)gamma).
inline std::uint8_t fib_symbol(std::uint64_t i) {
    return static_cast<std::uint8_t>(floor_n_gamma(i + 2) - floor_n_gamma(i + 1));
}

/// a_i = floor((i+1)gamma) - floor(i gamma); a_0 = 0 falls out of the formula.
inline std::uint8_t sturmian_a_symbol(std::uint64_t i) {
    return static_cast<std::uint8_t>(floor_n_gamma(i + 1) - floor_n_gamma(i));
}

/// TR[i] read off the Tribonacci representation of i: a trailing "11" gives 2,
/// a trailing "01" (or the string "1") gives 1, anything else 0.
inline std::uint8_t trib_symbol(std::uint64_t i) {
    const std::string d = trib_encode(i).digits;
    if (d.empty() || d.back() == '0')
        return 0;
    return (d.size() >= 2 && d[d.size() - 2] == '1') ? 2 : 1;
}

inline std::uint8_t trib2_symbol(std::uint64_t i) {
    return trib_symbol(i) == 2 ? 2 : 0;
}

inline std::uint8_t tm_symbol(std::uint64_t i) {
    return static_cast<std::uint8_t>(std::popcount(i) & 1);
}

inline std::uint8_t symbol_of(SequenceKind kind, std::uint64_t i) {
    switch (kind) {
    case SequenceKind::Fibonacci: return fib_symbol(i);
    case SequenceKind::SturmianA: return sturmian_a_symbol(i);
    case SequenceKind::Tribonacci: return trib_symbol(i);
    case SequenceKind::TribonacciRecoded: return trib2_symbol(i);
    case SequenceKind::ThueMorse: return tm_symbol(i);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Morphic generation.

namespace detail {

// Fixed point starting with 0. Invariant: word == image(word[0..pos)).
template <class Image>
std::vector<std::uint8_t> iterate_morphism(std::size_t length, Image image) {
    std::vector<std::uint8_t> word;
    image(std::uint8_t{0}, word);
    for (std::size_t pos = 1; word.size() < length; ++pos)
        image(word[pos], word);
    word.resize(length);
    return word;
}

} // namespace detail

/// Fixed point of 0 -> 01, 1 -> 0.
inline std::vector<std::uint8_t> fibonacci_morphic_prefix(std::size_t length) {
    return detail::iterate_morphism(length, [](std::uint8_t c, std::vector<std::uint8_t>& out) {
        out.push_back(0);
        if (c == 0)
            out.push_back(1);
    });
}

/// Fixed point of 0 -> 01, 1 -> 02, 2 -> 0.
inline std::vector<std::uint8_t> tribonacci_morphic_prefix(std::size_t length) {
    return detail::iterate_morphism(length, [](std::uint8_t c, std::vector<std::uint8_t>& out) {
        out.push_back(0);
        if (c != 2)
            out.push_back(static_cast<std::uint8_t>(c + 1));
    });
}

/// Fixed point of 0 -> 01, 1 -> 10.
inline std::vector<std::uint8_t> thue_morse_morphic_prefix(std::size_t length) {
    return detail::iterate_morphism(length, [](std::uint8_t c, std::vector<std::uint8_t>& out) {
        out.push_back(c);
        out.push_back(static_cast<std::uint8_t>(1 - c));
    });
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t default_generation_budget = 10'000'000;

/// Generation cap: RECTBAL_BUDGET when set to a positive integer, else 10^7.
inline std::size_t generation_budget() {
    if (const char* env = std::getenv("RECTBAL_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return default_generation_budget;
}

inline void check_budget(std::size_t length, std::optional<std::size_t> budget = std::nullopt) {
    const std::size_t cap = budget ? *budget : generation_budget();
    if (length > cap)
        throw BudgetExceeded("requested " + std::to_string(length) + " symbols, cap is " +
                             std::to_string(cap));
}

class WordTable {
public:
    WordTable(SequenceKind kind, std::vector<std::uint8_t> symbols)
        : kind_(kind), symbols_(std::move(symbols)) {
        const std::size_t letters = alphabet_size(kind_);
        const std::size_t len = symbols_.size();
        count_.assign(letters, std::vector<std::uint32_t>(len + 1, 0));
        count2_.assign(letters, std::vector<std::uint64_t>(len + 2, 0));
        for (std::size_t c = 0; c < letters; ++c) {
            auto& p = count_[c];
            auto& q = count2_[c];
            for (std::size_t k = 0; k < len; ++k)
                p[k + 1] = p[k] + (symbols_[k] == c ? 1 : 0);
            for (std::size_t k = 0; k <= len; ++k)
                q[k + 1] = q[k] + p[k];
        }
    }

    SequenceKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    std::size_t letters() const noexcept { return count_.size(); }
    std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<std::uint8_t>& symbols() const noexcept { return symbols_; }

    /// |w[0..k)|_c
    std::uint64_t prefix_count(std::size_t c, std::size_t k) const { return count_[c][k]; }

    /// |w[begin..begin+len)|_c
    std::uint64_t factor_count(std::size_t c, std::size_t begin, std::size_t len) const {
        return count_[c][begin + len] - count_[c][begin];
    }

    /// Occurrences of c in the m x n rectangle with corner index i:
    ///   sum_{k<m} (P(i+k+n) - P(i+k)) = Q(i+m+n) - Q(i+n) - Q(i+m) + Q(i).
    /// Requires i + m + n - 1 <= size() when m, n > 0.
    std::uint64_t rect_count(std::size_t c, std::uint64_t i, std::uint64_t m, std::uint64_t n) const {
        if (m == 0 || n == 0)
            return 0;
        const auto& q = count2_[c];
        return q[i + m + n] - q[i + n] - q[i + m] + q[i];
    }

    /// Rectangles with i + m + n <= size() + 1 are answerable.
    bool covers(std::uint64_t i, std::uint64_t m, std::uint64_t n) const noexcept {
        return m == 0 || n == 0 || i + m + n <= symbols_.size() + 1;
    }

private:
    SequenceKind kind_;
    std::vector<std::uint8_t> symbols_;
    std::vector<std::vector<std::uint32_t>> count_;
    std::vector<std::vector<std::uint64_t>> count2_;
};

inline std::vector<std::uint8_t> generate_symbols(SequenceKind kind, std::size_t length) {
    switch (kind) {
    case SequenceKind::Fibonacci:
        return fibonacci_morphic_prefix(length);
    case SequenceKind::SturmianA: {
        std::vector<std::uint8_t> w;
        w.reserve(length);
        if (length > 0)
            w.push_back(0);
        const auto f = fibonacci_morphic_prefix(length > 0 ? length - 1 : 0);
        w.insert(w.end(), f.begin(), f.end());
        return w;
    }
    case SequenceKind::Tribonacci:
        return tribonacci_morphic_prefix(length);
    case SequenceKind::TribonacciRecoded: {
        auto w = tribonacci_morphic_prefix(length);
        for (auto& c : w)
            if (c == 1)
                c = 0;
        return w;
    }
    case SequenceKind::ThueMorse: {
        std::vector<std::uint8_t> w(length);
        for (std::size_t i = 0; i < length; ++i)
            w[i] = tm_symbol(i);
        return w;
    }
    }
    return {};
}

/// Materializes the first `length` symbols; BudgetExceeded above the cap.
inline WordTable make_word(SequenceKind kind, std::size_t length,
                           std::optional<std::size_t> budget = std::nullopt) {
    check_budget(length, budget);
    return WordTable(kind, generate_symbols(kind, length));
}

/// Per-letter prefix counts s_c(k) for k <= limit.
struct PrefixCounts {
    SequenceKind kind;
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t operator()(std::size_t letter, std::size_t k) const { return counts.at(letter).at(k); }
    std::size_t limit() const { return counts.empty() ? 0 : counts.front().size() - 1; }
};

inline PrefixCounts prefix_counts(SequenceKind kind, std::size_t limit,
                                  std::optional<std::size_t> budget = std::nullopt) {
    check_budget(limit, budget);
    const auto symbols = generate_symbols(kind, limit);
    PrefixCounts out{kind, std::vector<std::vector<std::uint64_t>>(alphabet_size(kind),
                                                                    std::vector<std::uint64_t>(limit + 1, 0))};
    for (std::size_t k = 0; k < limit; ++k)
        for (std::size_t c = 0; c < out.counts.size(); ++c)
            out.counts[c][k + 1] = out.counts[c][k] + (symbols[k] == c ? 1 : 0);
    return out;
}

} // namespace rectbal
