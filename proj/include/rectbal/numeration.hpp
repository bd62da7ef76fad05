#pragma once

// Zeckendorf, Tribonacci and base-(-2) numeration. Digit strings are ASCII
// '0'/'1', most significant digit first; zero is the empty string.
//
// Fibonacci indices follow F_0 = 0, F_1 = 1, F_2 = 1, F_3 = 2; the last digit
// of a Zeckendorf string weighs F_2.

#include <rectbal/error.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rectbal {

namespace detail {

consteval std::array<std::uint64_t, 94> make_fibonacci_table() {
    std::array<std::uint64_t, 94> f{};
    f[0] = 0;
    f[1] = 1;
    for (std::size_t k = 2; k < f.size(); ++k)
        f[k] = f[k - 1] + f[k - 2];
    return f;
}

// 1, 2, 4, 7, 13, 24, ... : weights of Tribonacci representation digits.
consteval std::array<std::uint64_t, 70> make_tribonacci_weights() {
    std::array<std::uint64_t, 70> t{};
    t[0] = 1;
    t[1] = 2;
    t[2] = 4;
    for (std::size_t k = 3; k < t.size(); ++k)
        t[k] = t[k - 1] + t[k - 2] + t[k - 3];
    return t;
}

inline constexpr auto fibonacci_table = make_fibonacci_table();
inline constexpr auto tribonacci_weights = make_tribonacci_weights();

// weights[0] is the least significant weight. Greedy from the top gives the
// canonical representation for both Fibonacci-like systems.
inline std::string greedy_encode(std::uint64_t n, std::span<const std::uint64_t> weights) {
    std::size_t top = 0;
    while (top < weights.size() && weights[top] <= n)
        ++top;
    std::string digits;
    digits.reserve(top);
    for (std::size_t k = top; k-- > 0;) {
        if (weights[k] <= n) {
            digits.push_back('1');
            n -= weights[k];
        } else {
            digits.push_back('0');
        }
    }
    return digits;
}

// Decodes and rejects any run of `max_run + 1` consecutive ones.
inline std::uint64_t weighted_decode(std::string_view digits, std::span<const std::uint64_t> weights,
                                     std::size_t max_run, const char* system) {
    if (digits.size() > weights.size())
        throw InvalidRepresentation(std::string(system) + ": digit string too long");
    std::uint64_t value = 0;
    std::size_t run = 0;
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
        const char c = digits[pos];
        if (c != '0' && c != '1')
            throw InvalidRepresentation(std::string(system) + ": digits must be 0 or 1");
        run = (c == '1') ? run + 1 : 0;
        if (run > max_run)
            throw InvalidRepresentation(std::string(system) + ": too many consecutive 1 digits");
        if (c == '1')
            value += weights[digits.size() - 1 - pos];
    }
    return value;
}

inline std::string strip_leading_zeros(std::string_view digits) {
    const auto first = digits.find('1');
    return first == std::string_view::npos ? std::string() : std::string(digits.substr(first));
}

} // namespace detail

inline std::uint64_t fibonacci(std::size_t k) {
    if (k >= detail::fibonacci_table.size())
        throw std::out_of_range("fibonacci: index too large for 64 bits");
    return detail::fibonacci_table[k];
}

struct ZeckRep {
    std::string digits;
    std::uint64_t value = 0;
    friend bool operator==(const ZeckRep&, const ZeckRep&) = default;
};

struct TribRep {
    std::string digits;
    std::uint64_t value = 0;
    friend bool operator==(const TribRep&, const TribRep&) = default;
};

struct NegaBinRep {
    std::string digits;
    std::int64_t value = 0;
    friend bool operator==(const NegaBinRep&, const NegaBinRep&) = default;
};

/// Zeckendorf summand indices a_1 > a_2 > ... > a_k >= 2, no two consecutive.
struct FibIndexList {
    std::vector<unsigned> indices;
    friend bool operator==(const FibIndexList&, const FibIndexList&) = default;
};

inline ZeckRep zeck_encode(std::uint64_t n) {
    const std::span<const std::uint64_t> weights(detail::fibonacci_table.data() + 2,
                                                 detail::fibonacci_table.size() - 2);
    return {detail::greedy_encode(n, weights), n};
}

/// Accepts leading zeros. Throws InvalidRepresentation on adjacent ones.
inline std::uint64_t zeck_decode(std::string_view digits) {
    const std::span<const std::uint64_t> weights(detail::fibonacci_table.data() + 2,
                                                 detail::fibonacci_table.size() - 2);
    return detail::weighted_decode(digits, weights, 1, "zeckendorf");
}

/// Value of the Zeckendorf string of n shifted one place left (F_j -> F_{j+1}).
inline std::uint64_t zeck_shift(std::uint64_t n) {
    if (n == 0)
        return 0;
    return zeck_decode(zeck_encode(n).digits + "0");
}

/// floor(n*phi) via the shift rule: floor(n*phi) = shift(n-1) + 1 for n >= 1.
inline std::uint64_t floor_n_phi_by_shift(std::uint64_t n) {
    return n == 0 ? 0 : zeck_shift(n - 1) + 1;
}

/// True iff the canonical representation matches 10*.
inline bool is_fibonacci(std::uint64_t n) {
    const std::string d = zeck_encode(n).digits;
    return !d.empty() && d.find('1', 1) == std::string::npos;
}

/// (u, v) = (F_k, F_{k+1}) for some k >= 2.
inline bool adjacent_fib(std::uint64_t u, std::uint64_t v) {
    if (!is_fibonacci(u) || !is_fibonacci(v))
        return false;
    return zeck_encode(v).digits.size() == zeck_encode(u).digits.size() + 1;
}

inline FibIndexList fib_index_list(std::uint64_t n) {
    if (n == 0)
        throw EmptyExpansion("fib_index_list: zero has no Zeckendorf summands");
    const std::string d = zeck_encode(n).digits;
    FibIndexList out;
    for (std::size_t pos = 0; pos < d.size(); ++pos)
        if (d[pos] == '1')
            out.indices.push_back(static_cast<unsigned>(d.size() + 1 - pos));
    return out;
}

inline TribRep trib_encode(std::uint64_t n) {
    return {detail::greedy_encode(n, detail::tribonacci_weights), n};
}

/// Accepts leading zeros. Throws InvalidRepresentation on three consecutive ones.
inline std::uint64_t trib_decode(std::string_view digits) {
    return detail::weighted_decode(digits, detail::tribonacci_weights, 2, "tribonacci");
}

inline NegaBinRep negabin_encode(std::int64_t n) {
    std::string rev;
    std::int64_t x = n;
    while (x != 0) {
        std::int64_t r = x % -2;
        x /= -2;
        if (r < 0) {
            r += 2;
            x += 1;
        }
        rev.push_back(r ? '1' : '0');
    }
    return {std::string(rev.rbegin(), rev.rend()), n};
}

inline std::int64_t negabin_decode(std::string_view digits) {
    if (digits.size() > 63)
        throw InvalidRepresentation("negabinary: digit string too long");
    std::int64_t value = 0;
    for (const char c : digits) {
        if (c != '0' && c != '1')
            throw InvalidRepresentation("negabinary: digits must be 0 or 1");
        value = value * -2 + (c - '0');
    }
    return value;
}

// ---------------------------------------------------------------------------
// Pair encodings of (m, n): both Zeckendorf strings padded with leading zeros
// to a common length, then zipped most significant digit first.

struct PairSymbol {
    std::uint8_t first = 0;
    std::uint8_t second = 0;
    constexpr std::uint8_t index() const noexcept { return static_cast<std::uint8_t>(2 * first + second); }
    static constexpr PairSymbol from_index(std::uint8_t idx) noexcept {
        return {static_cast<std::uint8_t>(idx >> 1), static_cast<std::uint8_t>(idx & 1)};
    }
    friend bool operator==(const PairSymbol&, const PairSymbol&) = default;
};

using PairWord = std::vector<PairSymbol>;

inline PairWord zip_digits(std::string_view x, std::string_view y) {
    const std::size_t len = std::max(x.size(), y.size());
    PairWord word(len);
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t px = k + x.size();
        const std::size_t py = k + y.size();
        word[k].first = px >= len ? static_cast<std::uint8_t>(x[px - len] - '0') : 0;
        word[k].second = py >= len ? static_cast<std::uint8_t>(y[py - len] - '0') : 0;
    }
    return word;
}

inline PairWord pair_encode(std::uint64_t m, std::uint64_t n) {
    return zip_digits(zeck_encode(m).digits, zeck_encode(n).digits);
}

inline std::pair<std::uint64_t, std::uint64_t> pair_decode(const PairWord& word) {
    std::string x, y;
    for (const PairSymbol s : word) {
        x.push_back(static_cast<char>('0' + s.first));
        y.push_back(static_cast<char>('0' + s.second));
    }
    return {zeck_decode(x), zeck_decode(y)};
}

/// "[0,1][0,0]..." form.
inline std::string format_pair_word(const PairWord& word) {
    std::string out;
    out.reserve(word.size() * 5);
    for (const PairSymbol s : word) {
        out += '[';
        out += static_cast<char>('0' + s.first);
        out += ',';
        out += static_cast<char>('0' + s.second);
        out += ']';
    }
    return out;
}

inline PairWord parse_pair_word(std::string_view text) {
    PairWord word;
    std::size_t pos = 0;
    auto bit = [&](char c) -> std::uint8_t {
        if (c != '0' && c != '1')
            throw InvalidRepresentation("pair word: expected 0 or 1");
        return static_cast<std::uint8_t>(c - '0');
    };
    while (pos < text.size()) {
        if (text[pos] == ' ') {
            ++pos;
            continue;
        }
        if (text.size() - pos < 5 || text[pos] != '[' || text[pos + 2] != ',' || text[pos + 4] != ']')
            throw InvalidRepresentation("pair word: malformed symbol near offset " + std::to_string(pos));
        word.push_back({bit(text[pos + 1]), bit(text[pos + 3])});
        pos += 5;
    }
    return word;
}

} // namespace rectbal
