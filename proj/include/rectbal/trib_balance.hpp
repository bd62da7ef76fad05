#pragma once

// 2-balance of Tribonacci word rectangles.
//
// Scans give definitive unbalance certificates and horizon-bounded balance
// claims. For m, n >= 3 unbalance is certified structurally: on the recoded
// word TR2 (1 -> 0) find i, j with a common factor w of length p = m+n-6
// followed by 00200 at i and by 00000 at j. The two m x n rectangles built from
// these length-(p+5) factors agree except in the lower-right 3 x 3 corner,
// whose antidiagonals carry the tail, so letter 2 occurs exactly three more
// times at i than at j.

#include <rectbal/error.hpp>
#include <rectbal/rectangles.hpp>
#include <rectbal/words.hpp>

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace rectbal {

inline constexpr std::uint64_t default_trib_horizon = 1'000'000;

struct LetterWitness {
    std::uint8_t letter = 0;
    std::uint64_t i = 0; // corner with the larger count
    std::uint64_t j = 0;
    std::uint64_t count_i = 0;
    std::uint64_t count_j = 0;
};

struct TwoBalanceReport {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint64_t horizon = 0;
    std::array<std::uint64_t, 3> min_count{};
    std::array<std::uint64_t, 3> max_count{};
    std::array<std::uint64_t, 3> argmin{};
    std::array<std::uint64_t, 3> argmax{};

    bool letter_balanced(std::size_t c) const { return max_count[c] - min_count[c] <= 2; }
    /// 2-balanced within the horizon. A false value is definitive.
    bool balanced_up_to_horizon() const {
        return letter_balanced(0) && letter_balanced(1) && letter_balanced(2);
    }
    std::optional<LetterWitness> witness() const {
        for (std::uint8_t c = 0; c < 3; ++c)
            if (!letter_balanced(c))
                return LetterWitness{c, argmax[c], argmin[c], max_count[c], min_count[c]};
        return std::nullopt;
    }
};

/// Per-letter extrema of |A(i,m,n)|_c over i < horizon. The full horizon is
/// always scanned so the extrema are reproducible.
inline TwoBalanceReport two_balance_scan(const WordTable& tr, std::uint64_t m, std::uint64_t n,
                                         std::uint64_t horizon) {
    if (m == 0 || n == 0)
        throw std::invalid_argument("two_balance_scan: m and n must be positive");
    if (horizon == 0)
        throw std::invalid_argument("two_balance_scan: horizon must be positive");
    if (tr.kind() != SequenceKind::Tribonacci)
        throw std::invalid_argument("two_balance_scan: needs the Tribonacci word");
    if (!tr.covers(horizon - 1, m, n))
        throw std::out_of_range("two_balance_scan: word too short for horizon");
    TwoBalanceReport r;
    r.m = m;
    r.n = n;
    r.horizon = horizon;
    r.min_count.fill(std::numeric_limits<std::uint64_t>::max());
    r.max_count.fill(0);
    for (std::uint64_t i = 0; i < horizon; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            const std::uint64_t v = tr.rect_count(c, i, m, n);
            if (v < r.min_count[c]) {
                r.min_count[c] = v;
                r.argmin[c] = i;
            }
            if (v > r.max_count[c]) {
                r.max_count[c] = v;
                r.argmax[c] = i;
            }
        }
    }
    // max starts at 0: a letter absent everywhere keeps argmax 0, which is fine.
    return r;
}

inline TwoBalanceReport two_balance_scan(std::uint64_t m, std::uint64_t n,
                                         std::uint64_t horizon = default_trib_horizon) {
    const WordTable tr = make_word(SequenceKind::Tribonacci, horizon + m + n);
    return two_balance_scan(tr, m, n, horizon);
}

/// Reports for every 1 <= n <= limit with m = 2.
inline std::vector<TwoBalanceReport> scan_2xn(std::uint64_t limit, std::uint64_t horizon = default_trib_horizon) {
    std::vector<TwoBalanceReport> out;
    if (limit == 0)
        return out;
    const WordTable tr = make_word(SequenceKind::Tribonacci, horizon + limit + 2);
    for (std::uint64_t n = 1; n <= limit; ++n)
        out.push_back(two_balance_scan(tr, 2, n, horizon));
    return out;
}

/// n <= limit whose 2 x n rectangles are 2-balanced up to the horizon.
inline std::vector<std::uint64_t> balanced_2xn_list(std::uint64_t limit,
                                                    std::uint64_t horizon = default_trib_horizon) {
    std::vector<std::uint64_t> out;
    for (const auto& r : scan_2xn(limit, horizon))
        if (r.balanced_up_to_horizon())
            out.push_back(r.n);
    return out;
}

// ---------------------------------------------------------------------------
// Corner witnesses

struct CornerWitness {
    std::uint64_t p = 0;
    std::uint64_t i = 0; // TR2[i+p..i+p+4] = 00200
    std::uint64_t j = 0; // TR2[j+p..j+p+4] = 00000
};

inline constexpr std::uint64_t default_corner_search_limit = 100'000;

namespace detail {

// Polynomial hash mod 2^61 - 1 over a prefix table. Matches are confirmed
// symbol by symbol, so collisions only cost time.
class FactorHasher {
public:
    explicit FactorHasher(const std::vector<std::uint8_t>& w) : pre_(w.size() + 1, 0), pow_(w.size() + 1, 1) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            pre_[k + 1] = mod(mul(pre_[k], base) + w[k] + 1);
            pow_[k + 1] = mul(pow_[k], base);
        }
    }

    std::uint64_t hash(std::size_t begin, std::size_t len) const {
        return mod(pre_[begin + len] + modulus - mul(pre_[begin], pow_[len]));
    }

private:
    static constexpr std::uint64_t modulus = (std::uint64_t{1} << 61) - 1;
    static constexpr std::uint64_t base = 1'000'003;

    static std::uint64_t mod(std::uint64_t x) {
        x = (x & modulus) + (x >> 61);
        return x >= modulus ? x - modulus : x;
    }
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
        const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
        return mod(mod(static_cast<std::uint64_t>(prod & modulus)) +
                   mod(static_cast<std::uint64_t>(prod >> 61)));
    }

    std::vector<std::uint64_t> pre_;
    std::vector<std::uint64_t> pow_;
};

inline bool tail_is(const WordTable& tr2, std::uint64_t at, const std::array<std::uint8_t, 5>& tail) {
    for (std::size_t k = 0; k < 5; ++k)
        if (tr2[at + k] != tail[k])
            return false;
    return true;
}

inline constexpr std::array<std::uint8_t, 5> corner_tail{0, 0, 2, 0, 0};
inline constexpr std::array<std::uint8_t, 5> flat_tail{0, 0, 0, 0, 0};

} // namespace detail

/// Lexicographically smallest (i, j) with i, j + p + 5 <= search_limit.
inline CornerWitness find_corner_witness(const WordTable& tr2, std::uint64_t p, std::uint64_t search_limit) {
    if (tr2.kind() != SequenceKind::TribonacciRecoded)
        throw std::invalid_argument("find_corner_witness: needs the recoded Tribonacci word");
    search_limit = std::min<std::uint64_t>(search_limit, tr2.size());
    if (search_limit < p + 5)
        throw NotFoundWithinLimit("find_corner_witness: search limit shorter than p + 5");
    const std::uint64_t last = search_limit - (p + 5); // inclusive start bound

    const detail::FactorHasher hasher(tr2.symbols());
    // Smallest j per prefix hash, plus later j's for collision fallback.
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> flat;
    for (std::uint64_t j = 0; j <= last; ++j)
        if (detail::tail_is(tr2, j + p, detail::flat_tail))
            flat[hasher.hash(j, p)].push_back(j);

    for (std::uint64_t i = 0; i <= last; ++i) {
        if (!detail::tail_is(tr2, i + p, detail::corner_tail))
            continue;
        const auto it = flat.find(hasher.hash(i, p));
        if (it == flat.end())
            continue;
        for (const std::uint64_t j : it->second) {
            bool same = true;
            for (std::uint64_t k = 0; k < p && same; ++k)
                same = tr2[i + k] == tr2[j + k];
            if (same)
                return {p, i, j};
        }
    }
    throw NotFoundWithinLimit("find_corner_witness: no witness for p = " + std::to_string(p) + " below " +
                              std::to_string(search_limit));
}

inline CornerWitness find_corner_witness(std::uint64_t p, std::uint64_t search_limit = default_corner_search_limit) {
    const WordTable tr2 = make_word(SequenceKind::TribonacciRecoded, search_limit);
    return find_corner_witness(tr2, p, search_limit);
}

/// True iff TR2 satisfies every structural condition of the witness.
inline bool corner_witness_valid(const WordTable& tr2, const CornerWitness& w) {
    if (w.i + w.p + 5 > tr2.size() || w.j + w.p + 5 > tr2.size())
        return false;
    for (std::uint64_t k = 0; k < w.p; ++k)
        if (tr2[w.i + k] != tr2[w.j + k])
            return false;
    return detail::tail_is(tr2, w.i + w.p, detail::corner_tail) && detail::tail_is(tr2, w.j + w.p, detail::flat_tail);
}

using Block3 = std::array<std::array<std::uint8_t, 3>, 3>;

/// Lower-right 3 x 3 corners of B(i,m,n) and B(j,m,n), m + n = p + 6.
inline std::pair<Block3, Block3> corner_blocks(const WordTable& tr2, const CornerWitness& w, std::uint64_t m,
                                               std::uint64_t n) {
    if (m < 3 || n < 3 || m + n != w.p + 6)
        throw std::invalid_argument("corner_blocks: need m, n >= 3 and m + n = p + 6");
    auto corner = [&](std::uint64_t at) {
        Block3 b{};
        for (std::uint64_t r = 0; r < 3; ++r)
            for (std::uint64_t c = 0; c < 3; ++c)
                b[r][c] = tr2[at + (m - 3 + r) + (n - 3 + c)];
        return b;
    };
    return {corner(w.i), corner(w.j)};
}

struct CornerCertificate {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    CornerWitness witness;
    std::uint64_t count2_i = 0;
    std::uint64_t count2_j = 0;

    std::int64_t difference() const {
        return static_cast<std::int64_t>(count2_i) - static_cast<std::int64_t>(count2_j);
    }
};

struct NoTwoBalanceReport {
    std::uint64_t max_dim = 0;
    std::vector<CornerCertificate> certificates;
    bool all_certified = false;
};

/// Certifies, for every 3 <= m <= n <= max_dim, a letter-2 gap of exactly 3
/// between two m x n Tribonacci rectangles.
inline NoTwoBalanceReport verify_no_2balance_3plus(std::uint64_t max_dim,
                                                   std::uint64_t search_limit = default_corner_search_limit) {
    if (max_dim < 3)
        throw std::invalid_argument("verify_no_2balance_3plus: max_dim must be at least 3");
    const WordTable tr2 = make_word(SequenceKind::TribonacciRecoded, search_limit);
    const WordTable tr = make_word(SequenceKind::Tribonacci, search_limit);
    std::map<std::uint64_t, CornerWitness> by_p;
    NoTwoBalanceReport report;
    report.max_dim = max_dim;
    report.all_certified = true;
    for (std::uint64_t m = 3; m <= max_dim; ++m) {
        for (std::uint64_t n = m; n <= max_dim; ++n) {
            const std::uint64_t p = m + n - 6;
            auto it = by_p.find(p);
            if (it == by_p.end())
                it = by_p.emplace(p, find_corner_witness(tr2, p, search_limit)).first;
            CornerCertificate cert{m, n, it->second, tr.rect_count(2, it->second.i, m, n),
                                   tr.rect_count(2, it->second.j, m, n)};
            if (cert.count2_i != cert.count2_j + 3 || !corner_witness_valid(tr2, cert.witness))
                report.all_certified = false;
            report.certificates.push_back(cert);
        }
    }
    return report;
}

} // namespace rectbal
