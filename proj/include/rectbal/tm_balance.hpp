#pragma once

// Thue-Morse rectangles and the signed excess s(i,m,n) = 2|A(i,m,n)|_1 - mn.
//
// Because t_{2k} + t_{2k+1} = 1, entries of a row pair off except at the
// edges, and the leftover edge columns fold onto half-index factors of t.
// For i, m, n all even:
//     s = 2 (b - a),  a = sum t[i/2 .. (i+m)/2),  b = sum t[(i+n)/2 .. (i+m+n)/2).
// Odd m or n peel the last row or column; odd i peels the first row.

#include <rectbal/error.hpp>
#include <rectbal/rectangles.hpp>
#include <rectbal/words.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

namespace rectbal {

/// 2 T(i,m,n) - mn from the rectangle count table.
inline std::int64_t excess(const WordTable& tm, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    const auto ones = static_cast<std::int64_t>(tm.rect_count(1, i, m, n));
    return 2 * ones - static_cast<std::int64_t>(m * n);
}

inline std::int64_t excess(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    return excess(make_word(SequenceKind::ThueMorse, required_length(i, m, n)), i, m, n);
}

namespace detail {

// sum t[begin .. begin+len) using popcount parity.
inline std::int64_t tm_factor_sum(std::uint64_t begin, std::uint64_t len) {
    std::int64_t s = 0;
    for (std::uint64_t x = begin; x < begin + len; ++x)
        s += std::popcount(x) & 1;
    return s;
}

} // namespace detail

/// Fast formula for i, m, n all even.
inline std::int64_t excess_even_even(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (i % 2 || m % 2 || n % 2)
        throw ParityViolation("excess_even_even: i, m and n must all be even");
    if (m == 0 || n == 0)
        return 0;
    const std::int64_t a = detail::tm_factor_sum(i / 2, m / 2);
    const std::int64_t b = detail::tm_factor_sum((i + n) / 2, m / 2);
    return 2 * (b - a);
}

/// Excess for any parities, reduced to the all-even case.
inline std::int64_t excess_parity_reduced(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0)
        return 0;
    if (i % 2 == 1) {
        // First row is t[i..i+n); the rest is A(i+1, m-1, n).
        const std::int64_t row = detail::tm_factor_sum(i, n);
        return 2 * row - static_cast<std::int64_t>(n) + excess_parity_reduced(i + 1, m - 1, n);
    }
    const bool m_even = m % 2 == 0;
    const bool n_even = n % 2 == 0;
    if (m_even && n_even)
        return excess_even_even(i, m, n);
    if (m_even) { // last column t[i+n-1 .. i+n-1+m)
        const std::int64_t a = excess_even_even(i, m, n - 1);
        const std::int64_t b = detail::tm_factor_sum(i + n - 1, m);
        return a + 2 * b - static_cast<std::int64_t>(m);
    }
    if (n_even) { // last row t[i+m-1 .. i+m-1+n)
        const std::int64_t a = excess_even_even(i, m - 1, n);
        const std::int64_t b = detail::tm_factor_sum(i + m - 1, n);
        return a + 2 * b - static_cast<std::int64_t>(n);
    }
    const std::int64_t a = excess_parity_reduced(i, m, n - 1); // m odd, n-1 even
    const std::int64_t b = detail::tm_factor_sum(i + n - 1, m);
    return a + 2 * b - static_cast<std::int64_t>(m);
}

inline constexpr std::uint64_t default_tm_horizon = 100'000;

/// max(10^5, 2^(ceil(log2 mn) + 6)).
inline std::uint64_t default_profile_horizon(std::uint64_t m, std::uint64_t n) {
    const std::uint64_t mn = std::max<std::uint64_t>(m * n, 1);
    const auto bits = static_cast<unsigned>(std::bit_width(mn - 1)); // ceil(log2 mn)
    const std::uint64_t scaled = std::uint64_t{1} << std::min(bits + 6, 62u);
    return std::max(default_tm_horizon, scaled);
}

struct ExcessProfile {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint64_t horizon = 0;
    std::int64_t min_s = 0;
    std::int64_t max_s = 0;
    std::uint64_t argmin = 0;
    std::uint64_t argmax = 0;
    bool parity_consistent = true; // every sample had s = mn (mod 2)

    /// max over i,j of | |A(i)|_1 - |A(j)|_1 | within the horizon.
    std::uint64_t balance() const { return static_cast<std::uint64_t>((max_s - min_s) / 2); }
};

inline ExcessProfile excess_profile(const WordTable& tm, std::uint64_t m, std::uint64_t n, std::uint64_t horizon) {
    if (m == 0 || n == 0)
        throw std::invalid_argument("excess_profile: m and n must be positive");
    if (horizon == 0)
        throw std::invalid_argument("excess_profile: horizon must be positive");
    if (!tm.covers(horizon - 1, m, n))
        throw std::out_of_range("excess_profile: word too short for horizon");
    ExcessProfile p;
    p.m = m;
    p.n = n;
    p.horizon = horizon;
    p.min_s = std::numeric_limits<std::int64_t>::max();
    p.max_s = std::numeric_limits<std::int64_t>::min();
    const std::int64_t parity = static_cast<std::int64_t>((m * n) % 2);
    for (std::uint64_t i = 0; i < horizon; ++i) {
        const std::int64_t s = excess(tm, i, m, n);
        if (s < p.min_s) {
            p.min_s = s;
            p.argmin = i;
        }
        if (s > p.max_s) {
            p.max_s = s;
            p.argmax = i;
        }
        if (((s % 2) + 2) % 2 != parity)
            p.parity_consistent = false;
    }
    return p;
}

inline ExcessProfile excess_profile(std::uint64_t m, std::uint64_t n, std::uint64_t horizon) {
    const WordTable tm = make_word(SequenceKind::ThueMorse, horizon + m + n);
    return excess_profile(tm, m, n, horizon);
}

inline ExcessProfile excess_profile(std::uint64_t m, std::uint64_t n) {
    return excess_profile(m, n, default_profile_horizon(m, n));
}

/// Every excess value c seen below the horizon has -c somewhere below 2*horizon.
inline bool verify_thm8_symmetry(const WordTable& tm, std::uint64_t m, std::uint64_t n, std::uint64_t horizon) {
    if (m == 0 || n == 0)
        return true;
    if (!tm.covers(2 * horizon - 1, m, n))
        throw std::out_of_range("verify_thm8_symmetry: word too short for doubled horizon");
    std::set<std::int64_t> seen;
    std::set<std::int64_t> mirror_pool;
    for (std::uint64_t i = 0; i < 2 * horizon; ++i) {
        const std::int64_t s = excess(tm, i, m, n);
        if (i < horizon)
            seen.insert(s);
        mirror_pool.insert(s);
    }
    return std::all_of(seen.begin(), seen.end(), [&](std::int64_t c) { return mirror_pool.count(-c) > 0; });
}

inline bool verify_thm8_symmetry(std::uint64_t m, std::uint64_t n, std::uint64_t horizon = default_tm_horizon) {
    const WordTable tm = make_word(SequenceKind::ThueMorse, 2 * horizon + m + n);
    return verify_thm8_symmetry(tm, m, n, horizon);
}

struct BalanceClassTable {
    std::uint64_t max_dim = 0;
    std::uint64_t horizon = 0;
    std::vector<ExcessProfile> profiles; // row-major over 1 <= m, n <= max_dim

    const ExcessProfile& at(std::uint64_t m, std::uint64_t n) const {
        return profiles.at((m - 1) * max_dim + (n - 1));
    }
};

inline BalanceClassTable balance_class_table(std::uint64_t max_dim, std::uint64_t horizon) {
    BalanceClassTable t;
    t.max_dim = max_dim;
    t.horizon = horizon;
    const WordTable tm = make_word(SequenceKind::ThueMorse, horizon + 2 * max_dim);
    for (std::uint64_t m = 1; m <= max_dim; ++m)
        for (std::uint64_t n = 1; n <= max_dim; ++n)
            t.profiles.push_back(excess_profile(tm, m, n, horizon));
    return t;
}

/// For 3 <= m, n <= max_dim: balance class is 3 exactly when m and n are both odd.
inline bool verify_thm10(std::uint64_t max_dim, std::uint64_t horizon = default_tm_horizon) {
    if (max_dim < 3)
        throw std::invalid_argument("verify_thm10: max_dim must be at least 3");
    const WordTable tm = make_word(SequenceKind::ThueMorse, horizon + 2 * max_dim);
    for (std::uint64_t m = 3; m <= max_dim; ++m)
        for (std::uint64_t n = 3; n <= max_dim; ++n) {
            const bool both_odd = m % 2 == 1 && n % 2 == 1;
            if ((excess_profile(tm, m, n, horizon).balance() == 3) != both_odd)
                return false;
        }
    return true;
}

} // namespace rectbal
