#pragma once

/**
 * @file fib_balance.hpp
 * @brief Balance of Fibonacci word rectangles.
 *
 * (m, n) is balanced when T(i,m,n) takes at most two values over all i >= 0.
 * Everything here works on the a-word a_i = floor((i+1)g) - floor(ig),
 * g = (3 - sqrt5)/2, which is the Fibonacci word with a 0 prepended.
 *
 * Telescoping the row sums and splitting each floor difference gives
 *
 *     T(i,m,n) = m*floor(n g) + #{ k < m : frac((i+k)g) >= beta },
 *     beta     = 1 - frac(n g).
 *
 * The count depends on i only through x = frac(i g), and as a function of x
 * it is constant on the arcs of [0,1) cut by the points frac(-j g),
 * j in [0,m) u [n,n+m). Since {frac(i g)} is dense, the values of T are
 * exactly the arc values. That turns the infinite quantifier over i into a
 * finite sweep, which is the decision procedure used by exact_balance and
 * BalanceGrid.
 *
 * Three routes decide balance and are cross-checked by the test suite:
 *   - exact_balance: circle partition with exact Q(sqrt5) comparisons;
 *   - lemma1_scan: semi-decision that streams Delta(i) looking for a block
 *     a,0,...,0,a with a = +-1;
 *   - zeck_characterization: closed-form test on Zeckendorf summand indices.
 */

#include <rectbal/error.hpp>
#include <rectbal/exact_quadratic.hpp>
#include <rectbal/numeration.hpp>
#include <rectbal/parallel.hpp>
#include <rectbal/rectangles.hpp>
#include <rectbal/words.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rectbal {

enum class BalanceStatus { Balanced, Unbalanced, UnknownUpToHorizon };
enum class BalanceMethod { Exact, Scan, Zeckendorf };

constexpr std::string_view status_name(BalanceStatus s) noexcept {
    switch (s) {
    case BalanceStatus::Balanced: return "balanced";
    case BalanceStatus::Unbalanced: return "unbalanced";
    case BalanceStatus::UnknownUpToHorizon: return "unknown-up-to-horizon";
    }
    return "?";
}

constexpr std::string_view method_name(BalanceMethod m) noexcept {
    switch (m) {
    case BalanceMethod::Exact: return "exact";
    case BalanceMethod::Scan: return "scan";
    case BalanceMethod::Zeckendorf: return "zeck";
    }
    return "?";
}

/// Two corner indices whose rectangle sums differ by at least 2.
struct Witness {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    std::uint64_t t_i = 0;
    std::uint64_t t_j = 0;
};

struct BalanceVerdict {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    BalanceStatus status = BalanceStatus::UnknownUpToHorizon;
    BalanceMethod method = BalanceMethod::Exact;
    std::optional<Witness> witness;
    std::optional<std::uint64_t> horizon;
    std::vector<std::uint64_t> value_set; // exact method only

    bool balanced() const noexcept { return status == BalanceStatus::Balanced; }
};

/// T(i,m,n) on the a-word by telescoping floors; no word table involved.
inline std::uint64_t t_telescoped(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (n == 0)
        return 0;
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k < m; ++k)
        total += floor_n_gamma(i + k + n) - floor_n_gamma(i + k);
    return total;
}

/// m*floor(n g) + #{k < m : frac((i+k)g) >= 1 - frac(n g)}, with exact comparisons.
inline std::uint64_t t_counting_form(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0)
        return 0;
    const QuadraticValue beta = QuadraticValue::integer(1) - frac_n_gamma(n);
    std::uint64_t count = 0;
    for (std::uint64_t k = 0; k < m; ++k) {
        const int s = sign(frac_n_gamma(i + k) - beta);
        if (s == 0)
            throw std::logic_error("t_counting_form: fractional part hit the threshold exactly");
        count += s > 0 ? 1 : 0;
    }
    return m * floor_n_gamma(n) + count;
}

// ---------------------------------------------------------------------------
// Circle partition

struct CirclePartition {
    std::uint64_t m = 0; // m <= n
    std::uint64_t n = 0;
    std::uint64_t base = 0;                  // m * floor(n g)
    QuadraticValue threshold;                // beta = 1 - frac(n g)
    std::vector<QuadraticValue> breakpoints; // strictly increasing, breakpoints[0] == 0
    std::vector<std::uint64_t> point_index;  // j with breakpoints[t] == frac(-j g)
    std::vector<std::int64_t> arc_values;    // count on [breakpoints[t], breakpoints[t+1])

    std::vector<std::uint64_t> value_set() const {
        std::set<std::uint64_t> values;
        for (const auto v : arc_values)
            values.insert(base + static_cast<std::uint64_t>(v));
        return {values.begin(), values.end()};
    }

    /// Index t of the arc containing x in [0,1).
    std::size_t arc_of(const QuadraticValue& x) const {
        const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
        return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    }
};

/// #{k < m : frac(x + k g) >= beta} evaluated directly at x in [0,1).
/// Arcs are closed on the left, so this equals the right limit at x.
inline std::int64_t arc_count_at(const CirclePartition& part, const QuadraticValue& x) {
    const QuadraticValue one = QuadraticValue::integer(1);
    std::int64_t count = 0;
    for (std::uint64_t k = 0; k < part.m; ++k) {
        QuadraticValue y = x + frac_n_gamma(k);
        if (y >= one)
            y -= one;
        count += (y >= part.threshold) ? 1 : 0;
    }
    return count;
}

inline CirclePartition circle_partition(std::uint64_t m, std::uint64_t n) {
    if (m > n)
        std::swap(m, n);
    CirclePartition part;
    part.m = m;
    part.n = n;
    if (m == 0) {
        part.breakpoints = {QuadraticValue{}};
        part.point_index = {0};
        part.arc_values = {0};
        return part;
    }
    part.base = m * floor_n_gamma(n);
    part.threshold = QuadraticValue::integer(1) - frac_n_gamma(n);

    // Arc of row k is [frac(-(n+k)g), frac(-k g)) on the circle.
    std::vector<std::uint64_t> js;
    js.reserve(2 * m);
    for (std::uint64_t j = 0; j < m; ++j)
        js.push_back(j);
    for (std::uint64_t j = n; j < n + m; ++j)
        js.push_back(j);
    std::vector<QuadraticValue> pos;
    pos.reserve(js.size());
    for (const auto j : js)
        pos.push_back(frac_neg_n_gamma(j));
    std::vector<std::size_t> order(js.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pos[x] < pos[y]; });

    part.breakpoints.reserve(order.size());
    part.point_index.reserve(order.size());
    for (const auto t : order) {
        if (!part.breakpoints.empty() && !(part.breakpoints.back() < pos[t]))
            throw std::logic_error("circle_partition: breakpoints not distinct");
        part.breakpoints.push_back(pos[t]);
        part.point_index.push_back(js[t]);
    }

    // Value at x = 0, then one +-1 step per breakpoint: a start point adds the
    // arc of row j-n, an end point removes the arc of row j.
    std::int64_t value = 0;
    for (std::uint64_t k = 0; k < m; ++k) {
        const int s = sign(frac_n_gamma(k) - part.threshold);
        if (s == 0)
            throw std::logic_error("circle_partition: threshold hit exactly");
        value += s > 0 ? 1 : 0;
    }
    part.arc_values.reserve(order.size());
    part.arc_values.push_back(value);
    for (std::size_t t = 1; t < part.point_index.size(); ++t) {
        value += part.point_index[t] >= n ? 1 : -1;
        part.arc_values.push_back(value);
    }
    return part;
}

/// Smallest i with frac(i g) in the given arcs, for each arc asked for.
inline std::vector<std::uint64_t> first_visits(const CirclePartition& part, const std::vector<std::size_t>& arcs,
                                               std::uint64_t limit = 100'000'000) {
    std::vector<std::optional<std::uint64_t>> found(arcs.size());
    std::size_t remaining = arcs.size();
    for (std::uint64_t i = 0; i < limit && remaining > 0; ++i) {
        const std::size_t t = part.arc_of(frac_n_gamma(i));
        for (std::size_t a = 0; a < arcs.size(); ++a)
            if (!found[a] && arcs[a] == t) {
                found[a] = i;
                --remaining;
            }
    }
    if (remaining > 0)
        throw NotFoundWithinLimit("first_visits: orbit did not reach every requested arc");
    std::vector<std::uint64_t> out;
    for (const auto& f : found)
        out.push_back(*f);
    return out;
}

inline BalanceVerdict exact_balance(std::uint64_t m, std::uint64_t n) {
    const CirclePartition part = circle_partition(m, n);
    BalanceVerdict v;
    v.m = m;
    v.n = n;
    v.method = BalanceMethod::Exact;
    v.value_set = part.value_set();
    if (v.value_set.size() <= 2) {
        v.status = BalanceStatus::Balanced;
        return v;
    }
    v.status = BalanceStatus::Unbalanced;
    const auto [lo, hi] = std::minmax_element(part.arc_values.begin(), part.arc_values.end());
    const std::vector<std::size_t> arcs{static_cast<std::size_t>(hi - part.arc_values.begin()),
                                        static_cast<std::size_t>(lo - part.arc_values.begin())};
    const auto visits = first_visits(part, arcs);
    Witness w;
    w.i = std::min(visits[0], visits[1]);
    w.j = std::max(visits[0], visits[1]);
    w.t_i = t_telescoped(w.i, m, n);
    w.t_j = t_telescoped(w.j, m, n);
    const auto gap = w.t_i > w.t_j ? w.t_i - w.t_j : w.t_j - w.t_i;
    if (gap < 2)
        throw std::logic_error("exact_balance: witness failed verification");
    v.witness = w;
    return v;
}

inline std::uint64_t distinct_value_count(std::uint64_t m, std::uint64_t n) {
    return circle_partition(m, n).value_set().size();
}

// ---------------------------------------------------------------------------
// Witness scan

inline constexpr std::uint64_t default_scan_horizon = 100'000;

/// Streams Delta(i,m,n) for i < horizon over a prebuilt a-word and reports the
/// first block a,0,...,0,a with a = +-1. Such a block at (i0, i) gives
/// T(i+1) = T(i0) + 2a. Without one the verdict is UnknownUpToHorizon.
inline BalanceVerdict lemma1_scan(const WordTable& a_word, std::uint64_t m, std::uint64_t n,
                                  std::uint64_t horizon) {
    if (horizon == 0)
        throw std::invalid_argument("lemma1_scan: horizon must be positive");
    if (a_word.kind() != SequenceKind::SturmianA)
        throw std::invalid_argument("lemma1_scan: needs the a-indexed Fibonacci word");
    BalanceVerdict v;
    v.m = m;
    v.n = n;
    v.method = BalanceMethod::Scan;
    v.horizon = horizon;
    v.status = BalanceStatus::UnknownUpToHorizon;
    if (m == 0 || n == 0)
        return v;
    if (a_word.size() < horizon + m + n - 1)
        throw std::out_of_range("lemma1_scan: word too short for horizon");

    auto prefix = [&](std::uint64_t x) { return static_cast<std::int64_t>(a_word.prefix_count(1, x)); };
    int last = 0;
    std::uint64_t last_at = 0;
    for (std::uint64_t i = 0; i < horizon; ++i) {
        const auto d = static_cast<int>((prefix(i + m + n) - prefix(i + n)) - (prefix(i + m) - prefix(i)));
        if (d == 0)
            continue;
        if (d == last) {
            Witness w{last_at, i + 1, rect_sum(a_word, last_at, m, n), rect_sum(a_word, i + 1, m, n)};
            const auto gap = w.t_i > w.t_j ? w.t_i - w.t_j : w.t_j - w.t_i;
            if (gap < 2)
                throw std::logic_error("lemma1_scan: witness failed verification");
            v.status = BalanceStatus::Unbalanced;
            v.witness = w;
            return v;
        }
        last = d;
        last_at = i;
    }
    return v;
}

inline BalanceVerdict lemma1_scan(std::uint64_t m, std::uint64_t n, std::uint64_t horizon = default_scan_horizon) {
    const WordTable a_word = make_word(SequenceKind::SturmianA, horizon + m + n);
    return lemma1_scan(a_word, m, n, horizon);
}

// ---------------------------------------------------------------------------
// Zeckendorf characterization

/// With m <= n, m = F_{a1}+...+F_{ak}, n = F_{b1}+...+F_{bl} (indices
/// decreasing), (m,n) is balanced iff one of:
///   (a) m in {0, 1};
///   (b) m = F_{a1}, a1 not among the b's, and the smallest b_j above a1 has
///       the parity of a1;
///   (c) m = F_{a1} and a1 is among the b's;
///   (d) a1 = b_l and b_{l-1}, b_l have different parity;
///   (e) a1 < b_l.
inline bool zeck_characterization(std::uint64_t m, std::uint64_t n) {
    if (m > n)
        std::swap(m, n);
    if (m <= 1)
        return true;
    const auto a = fib_index_list(m).indices;
    const auto b = fib_index_list(n).indices;
    const unsigned a1 = a.front();
    const bool single = a.size() == 1;
    const bool a1_in_b = std::find(b.begin(), b.end(), a1) != b.end();

    if (a1 < b.back()) // (e)
        return true;
    if (single && a1_in_b) // (c)
        return true;
    if (single && !a1_in_b) { // (b)
        std::optional<unsigned> above;
        for (const unsigned bj : b)
            if (bj > a1)
                above = bj; // b is decreasing, so this ends at the smallest one
        if (above && (*above - a1) % 2 == 0)
            return true;
    }
    if (a1 == b.back() && b.size() >= 2 && (b[b.size() - 2] - b.back()) % 2 == 1) // (d)
        return true;
    return false;
}

// ---------------------------------------------------------------------------
// Bulk sweeps

/// Ranks of j in [0, count) ordered by the circle position frac(-j g).
/// Rank 0 is j = 0.
class RotationOrder {
public:
    explicit RotationOrder(std::size_t count) : rank_(count) {
        std::vector<QuadraticValue> pos;
        pos.reserve(count);
        for (std::size_t j = 0; j < count; ++j)
            pos.push_back(frac_neg_n_gamma(j));
        std::vector<std::uint32_t> order(count);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return pos[x] < pos[y]; });
        for (std::size_t r = 0; r < count; ++r)
            rank_[order[r]] = static_cast<std::uint32_t>(r);
    }

    std::size_t size() const noexcept { return rank_.size(); }
    std::uint32_t rank(std::size_t j) const { return rank_.at(j); }

private:
    std::vector<std::uint32_t> rank_;
};

namespace detail {

// Point updates, whole-array max/min over nonempty prefix sums.
class PrefixExtremaTree {
public:
    explicit PrefixExtremaTree(std::size_t count) {
        size_ = 1;
        while (size_ < count)
            size_ *= 2;
        nodes_.assign(2 * size_, Node{});
    }

    void reset() { std::fill(nodes_.begin(), nodes_.end(), Node{}); }

    void add(std::size_t pos, int delta) {
        std::size_t x = pos + size_;
        nodes_[x].sum += delta;
        nodes_[x].max_prefix = nodes_[x].min_prefix = nodes_[x].sum;
        for (x /= 2; x >= 1; x /= 2) {
            const Node& l = nodes_[2 * x];
            const Node& r = nodes_[2 * x + 1];
            nodes_[x].sum = l.sum + r.sum;
            nodes_[x].max_prefix = std::max(l.max_prefix, l.sum + r.max_prefix);
            nodes_[x].min_prefix = std::min(l.min_prefix, l.sum + r.min_prefix);
        }
    }

    int leaf(std::size_t pos) const { return nodes_[pos + size_].sum; }
    int max_prefix() const { return nodes_[1].max_prefix; }
    int min_prefix() const { return nodes_[1].min_prefix; }

private:
    struct Node {
        int sum = 0;
        int max_prefix = 0;
        int min_prefix = 0;
    };
    std::size_t size_ = 1;
    std::vector<Node> nodes_;
};

} // namespace detail

/// Exact balance data for every m < rows, n < cols.
///
/// For fixed m the circle events live at ranks of j: +1 where an arc starts
/// (j in [n, n+m)), -1 where one ends (j in [0, m)). Arc values are a constant
/// plus the prefix sums of that event array, so the spread of T is
/// max prefix - min prefix. Moving n to n+1 shifts one start point, which is
/// two point updates in a segment tree.
class BalanceGrid {
public:
    BalanceGrid(std::uint64_t rows, std::uint64_t cols, unsigned jobs = 1)
        : rows_(rows), cols_(cols), lo_(rows * cols, 0), hi_(rows * cols, 0) {
        if (rows == 0 || cols == 0)
            return;
        const RotationOrder order(rows + cols);
        parallel_for(rows, jobs, [&](std::size_t m) { sweep_row(order, m); });
    }

    std::uint64_t rows() const noexcept { return rows_; }
    std::uint64_t cols() const noexcept { return cols_; }

    /// Number of distinct values of T(., m, n).
    unsigned distinct_count(std::uint64_t m, std::uint64_t n) const {
        const std::size_t at = index(m, n);
        return static_cast<unsigned>(hi_[at] - lo_[at] + 1);
    }

    bool balanced(std::uint64_t m, std::uint64_t n) const { return distinct_count(m, n) <= 2; }

    /// Values of T(., m, n) relative to T(0, m, n): the interval [lo, hi].
    std::pair<int, int> offsets(std::uint64_t m, std::uint64_t n) const {
        const std::size_t at = index(m, n);
        return {lo_[at], hi_[at]};
    }

    std::vector<std::uint64_t> value_set(std::uint64_t m, std::uint64_t n) const {
        const auto [lo, hi] = offsets(m, n);
        const auto t0 = static_cast<std::int64_t>(t_telescoped(0, m, n));
        std::vector<std::uint64_t> out;
        for (int d = lo; d <= hi; ++d)
            out.push_back(static_cast<std::uint64_t>(t0 + d));
        return out;
    }

private:
    std::size_t index(std::uint64_t m, std::uint64_t n) const {
        if (m >= rows_ || n >= cols_)
            throw std::out_of_range("BalanceGrid: (" + std::to_string(m) + "," + std::to_string(n) +
                                    ") outside the grid");
        return static_cast<std::size_t>(m * cols_ + n);
    }

    void sweep_row(const RotationOrder& order, std::uint64_t m) {
        detail::PrefixExtremaTree tree(order.size());
        // n = 0: starts and ends coincide on [0, m), all events cancel.
        for (std::uint64_t n = 0; n < cols_; ++n) {
            if (n > 0 && m > 0) {
                tree.add(order.rank(n - 1), -1);
                tree.add(order.rank(n - 1 + m), +1);
            }
            const int at_zero = tree.leaf(0);
            const std::size_t at = static_cast<std::size_t>(m * cols_ + n);
            lo_[at] = static_cast<std::int8_t>(tree.min_prefix() - at_zero);
            hi_[at] = static_cast<std::int8_t>(tree.max_prefix() - at_zero);
        }
    }

    std::uint64_t rows_;
    std::uint64_t cols_;
    std::vector<std::int8_t> lo_;
    std::vector<std::int8_t> hi_;
};

// ---------------------------------------------------------------------------
// Diverse rectangles, f-indexed

struct DiverseIdentityReport {
    std::uint64_t k = 0;
    // T(i,s,s) - T(j,s,s) with s = F_{6k}/2, i = (F_{6k-1}-1)/4, j = (F_{6k+2}-1)/4; expect 2k.
    std::uint64_t even_side = 0, even_i = 0, even_j = 0;
    std::int64_t even_difference = 0;
    // Same with s = F_{6k+3}/2, i = (F_{6k+5}-1)/4, j = (F_{6k+2}-1)/4; expect 2k+1.
    std::uint64_t odd_side = 0, odd_i = 0, odd_j = 0;
    std::int64_t odd_difference = 0;

    bool even_holds() const { return even_difference == static_cast<std::int64_t>(2 * k); }
    bool odd_holds() const { return odd_difference == static_cast<std::int64_t>(2 * k + 1); }
    bool holds() const { return even_holds() && odd_holds(); }
};

inline DiverseIdentityReport diverse_identities(std::uint64_t k, std::optional<std::size_t> budget = std::nullopt) {
    if (k == 0)
        throw std::invalid_argument("diverse_identities: k must be at least 1");
    if (6 * k + 5 >= 94)
        throw BudgetExceeded("diverse_identities: Fibonacci indices exceed 64 bits");
    DiverseIdentityReport r;
    r.k = k;
    r.even_side = fibonacci(6 * k) / 2;
    r.even_i = (fibonacci(6 * k - 1) - 1) / 4;
    r.even_j = (fibonacci(6 * k + 2) - 1) / 4;
    r.odd_side = fibonacci(6 * k + 3) / 2;
    r.odd_i = (fibonacci(6 * k + 5) - 1) / 4;
    r.odd_j = (fibonacci(6 * k + 2) - 1) / 4;
    const std::uint64_t need = std::max({required_length(r.even_i, r.even_side, r.even_side),
                                         required_length(r.even_j, r.even_side, r.even_side),
                                         required_length(r.odd_i, r.odd_side, r.odd_side),
                                         required_length(r.odd_j, r.odd_side, r.odd_side)});
    const WordTable f = make_word(SequenceKind::Fibonacci, need, budget);
    auto t = [&](std::uint64_t i, std::uint64_t s) { return static_cast<std::int64_t>(rect_sum(f, i, s, s)); };
    r.even_difference = t(r.even_i, r.even_side) - t(r.even_j, r.even_side);
    r.odd_difference = t(r.odd_i, r.odd_side) - t(r.odd_j, r.odd_side);
    return r;
}

inline bool diverse_identities_check(std::uint64_t k) {
    return diverse_identities(k).holds();
}

} // namespace rectbal
