#pragma once

// Hankel blocks A(i,m,n) with entries w[i+k+l], 0 <= k < m, 0 <= l < n.
// The block is determined by the factor w[i..i+m+n-2], so every quantity here
// reduces to prefix-table lookups on a WordTable.

#include <rectbal/exact_quadratic.hpp>
#include <rectbal/words.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectbal {

struct RectangleQuery {
    std::uint64_t i = 0;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    SequenceKind kind = SequenceKind::Fibonacci;
};

struct LetterCountVector {
    std::vector<std::uint64_t> counts;

    std::uint64_t operator[](std::size_t c) const { return c < counts.size() ? counts[c] : 0; }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts)
            t += c;
        return t;
    }
    friend bool operator==(const LetterCountVector&, const LetterCountVector&) = default;
};

/// Symbols needed to hold A(i,m,n).
constexpr std::uint64_t required_length(std::uint64_t i, std::uint64_t m, std::uint64_t n) noexcept {
    return (m == 0 || n == 0) ? 0 : i + m + n - 1;
}

namespace detail {
inline void require_cover(const WordTable& w, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (!w.covers(i, m, n))
        throw std::out_of_range("rectangle (" + std::to_string(i) + "," + std::to_string(m) + "," +
                                std::to_string(n) + ") runs past the generated word of length " +
                                std::to_string(w.size()));
}
} // namespace detail

inline LetterCountVector rect_letter_counts(const WordTable& w, std::uint64_t i, std::uint64_t m,
                                            std::uint64_t n) {
    detail::require_cover(w, i, m, n);
    LetterCountVector out{std::vector<std::uint64_t>(w.letters(), 0)};
    for (std::size_t c = 0; c < w.letters(); ++c)
        out.counts[c] = w.rect_count(c, i, m, n);
    return out;
}

/// T(i,m,n): the sum of all entries, letters read as integers.
inline std::uint64_t rect_sum(const WordTable& w, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    detail::require_cover(w, i, m, n);
    std::uint64_t total = 0;
    for (std::size_t c = 1; c < w.letters(); ++c)
        total += c * w.rect_count(c, i, m, n);
    return total;
}

inline std::uint64_t rect_sum(const RectangleQuery& q) {
    return rect_sum(make_word(q.kind, required_length(q.i, q.m, q.n)), q.i, q.m, q.n);
}

inline LetterCountVector rect_letter_counts(const RectangleQuery& q) {
    return rect_letter_counts(make_word(q.kind, required_length(q.i, q.m, q.n)), q.i, q.m, q.n);
}

/// Delta(i,m,n) = T(i+1,m,n) - T(i,m,n) by direct subtraction on a Sturmian word.
inline int delta(const WordTable& w, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    const auto next = static_cast<std::int64_t>(rect_sum(w, i + 1, m, n));
    const auto here = static_cast<std::int64_t>(rect_sum(w, i, m, n));
    return static_cast<int>(next - here);
}

/// Delta(i,m,n) on the a-word from floors alone:
///   (floor((i+m+n)g) - floor((i+n)g)) - (floor((i+m)g) - floor(ig)).
inline int delta_floor_form(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0)
        return 0;
    const auto f = [](std::uint64_t x) { return static_cast<std::int64_t>(floor_n_gamma(x)); };
    return static_cast<int>((f(i + m + n) - f(i + n)) - (f(i + m) - f(i)));
}

/// A(i,m,n) and A(i,n,m) hold the same multiset of letters.
inline bool rect_transpose_check(const WordTable& w, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    return rect_letter_counts(w, i, m, n) == rect_letter_counts(w, i, n, m);
}

inline bool rect_transpose_check(const RectangleQuery& q) {
    const auto w = make_word(q.kind, required_length(q.i, q.m, q.n));
    return rect_transpose_check(w, q.i, q.m, q.n);
}

/// Explicit m x n block, row-major. Only for small rectangles.
inline std::vector<std::vector<std::uint8_t>> materialize(const WordTable& w, std::uint64_t i,
                                                          std::uint64_t m, std::uint64_t n) {
    if (m * n > 1'000'000)
        throw BudgetExceeded("materialize: rectangles above 10^6 entries are not built");
    detail::require_cover(w, i, m, n);
    std::vector<std::vector<std::uint8_t>> rows(m, std::vector<std::uint8_t>(n));
    for (std::uint64_t k = 0; k < m; ++k)
        for (std::uint64_t l = 0; l < n; ++l)
            rows[k][l] = w[i + k + l];
    return rows;
}

} // namespace rectbal
