#pragma once

/**
 * @file dfa.hpp
 * @brief Automata over bit-tuple alphabets and reconstruction of the
 *        balanced-pair automaton from labeled samples.
 *
 * Inputs are Zeckendorf pair encodings of (m, n), most significant digit
 * first, padded with leading [0,0]. A sample table labels every pair with
 * both values below F_{L+2}, i.e. every valid encoding of length <= L.
 *
 * Inference is bounded Myhill-Nerode: two valid prefixes of length <= L - D
 * are merged when no valid suffix of length <= D separates them. A suffix that
 * would create adjacent ones in either track counts as a rejection. Prefixes
 * whose every continuation rejects form the dead class; it is not counted as
 * a state, and transitions into it are left undefined.
 */

#include <rectbal/error.hpp>
#include <rectbal/fib_balance.hpp>
#include <rectbal/numeration.hpp>

#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace rectbal {

class Dfa {
public:
    static constexpr std::int64_t undefined = -1;

    Dfa() = default;
    Dfa(unsigned arity, std::size_t states)
        : arity_(arity), delta_(states, std::vector<std::int64_t>(std::size_t{1} << arity, undefined)),
          accepting_(states, false) {}

    unsigned arity() const noexcept { return arity_; }
    std::size_t alphabet_size() const noexcept { return std::size_t{1} << arity_; }
    std::size_t state_count() const noexcept { return delta_.size(); }
    std::size_t start() const noexcept { return 0; }

    std::size_t add_state(bool accepting = false) {
        delta_.emplace_back(alphabet_size(), undefined);
        accepting_.push_back(accepting);
        return delta_.size() - 1;
    }

    void set_transition(std::size_t from, std::size_t symbol, std::size_t to) {
        delta_.at(from).at(symbol) = static_cast<std::int64_t>(to);
    }
    void set_accepting(std::size_t state, bool value) { accepting_.at(state) = value; }

    std::optional<std::size_t> next(std::size_t from, std::size_t symbol) const {
        const std::int64_t to = delta_.at(from).at(symbol);
        if (to == undefined)
            return std::nullopt;
        return static_cast<std::size_t>(to);
    }
    bool accepting(std::size_t state) const { return accepting_.at(state); }

    bool total() const {
        for (const auto& row : delta_)
            for (const auto to : row)
                if (to == undefined)
                    return false;
        return true;
    }

    friend bool operator==(const Dfa&, const Dfa&) = default;

private:
    unsigned arity_ = 2;
    std::vector<std::vector<std::int64_t>> delta_;
    std::vector<bool> accepting_;
};

/// Throws UndefinedTransition where the map is partial.
inline std::size_t dfa_step(const Dfa& d, std::size_t state, std::size_t symbol) {
    if (symbol >= d.alphabet_size())
        throw std::out_of_range("dfa_step: symbol outside the alphabet");
    if (auto to = d.next(state, symbol))
        return *to;
    throw UndefinedTransition("dfa_step: no transition from state " + std::to_string(state) + " on symbol " +
                              std::to_string(symbol));
}

/// Acceptance; a missing transition rejects.
inline bool dfa_run(const Dfa& d, const std::vector<std::size_t>& symbols) {
    std::size_t state = d.start();
    for (const std::size_t s : symbols) {
        if (s >= d.alphabet_size())
            throw std::out_of_range("dfa_run: symbol outside the alphabet");
        const auto to = d.next(state, s);
        if (!to)
            return false;
        state = *to;
    }
    return d.accepting(state);
}

inline bool dfa_run(const Dfa& d, const PairWord& word) {
    std::vector<std::size_t> symbols;
    symbols.reserve(word.size());
    for (const PairSymbol s : word)
        symbols.push_back(s.index());
    return dfa_run(d, symbols);
}

// ---------------------------------------------------------------------------
// Text form:
//   arity 2
//   states 15
//   start 0
//   accepting 0 1 4
//   0 [0,0] -> 0
//   ...

inline std::string symbol_text(unsigned arity, std::size_t symbol) {
    std::string s = "[";
    for (unsigned b = arity; b-- > 0;) {
        s += static_cast<char>('0' + ((symbol >> b) & 1));
        if (b > 0)
            s += ',';
    }
    return s + "]";
}

inline void write_dfa(std::ostream& out, const Dfa& d) {
    out << "arity " << d.arity() << "\n";
    out << "states " << d.state_count() << "\n";
    out << "start " << d.start() << "\n";
    out << "accepting";
    for (std::size_t s = 0; s < d.state_count(); ++s)
        if (d.accepting(s))
            out << ' ' << s;
    out << "\n";
    for (std::size_t s = 0; s < d.state_count(); ++s)
        for (std::size_t a = 0; a < d.alphabet_size(); ++a)
            if (auto to = d.next(s, a))
                out << s << ' ' << symbol_text(d.arity(), a) << " -> " << *to << "\n";
}

inline Dfa read_dfa(std::istream& in) {
    auto fail = [](const std::string& why) -> Dfa { throw std::runtime_error("read_dfa: " + why); };
    std::string line, key;
    unsigned arity = 0;
    std::optional<std::size_t> states;
    Dfa d;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        if (line.rfind("arity", 0) == 0) {
            ls >> key >> arity;
        } else if (line.rfind("states", 0) == 0) {
            std::size_t count = 0;
            ls >> key >> count;
            states = count;
            d = Dfa(arity, count);
        } else if (line.rfind("start", 0) == 0) {
            std::size_t start = 0;
            ls >> key >> start;
            if (start != 0)
                return fail("start state must be 0");
        } else if (line.rfind("accepting", 0) == 0) {
            if (!states)
                return fail("accepting before states");
            ls >> key;
            std::size_t s = 0;
            while (ls >> s)
                d.set_accepting(s, true);
        } else {
            if (!states)
                return fail("transition before states");
            std::size_t from = 0, to = 0;
            std::string sym, arrow;
            if (!(ls >> from >> sym >> arrow >> to) || arrow != "->")
                return fail("malformed transition: " + line);
            if (sym.size() != 2 * arity + 1 || sym.front() != '[' || sym.back() != ']')
                return fail("malformed symbol: " + sym);
            std::size_t symbol = 0;
            for (unsigned b = 0; b < arity; ++b) {
                const char c = sym[1 + 2 * b];
                if (c != '0' && c != '1')
                    return fail("malformed symbol: " + sym);
                symbol = 2 * symbol + static_cast<std::size_t>(c - '0');
            }
            d.set_transition(from, symbol, to);
        }
    }
    if (!states)
        return fail("missing states line");
    return d;
}

// ---------------------------------------------------------------------------
// Sample table

inline constexpr unsigned max_sample_len = 18;

struct SampleTable {
    unsigned max_len = 0;
    std::uint64_t bound = 0; // labels cover m, n < bound = F_{max_len+2}
    std::vector<std::uint8_t> labels;

    bool contains(std::uint64_t m, std::uint64_t n) const { return m < bound && n < bound; }
    bool label(std::uint64_t m, std::uint64_t n) const {
        if (!contains(m, n))
            throw std::out_of_range("SampleTable: pair outside the sample");
        return labels[static_cast<std::size_t>(m * bound + n)] != 0;
    }
    bool label(const PairWord& word) const {
        const auto [m, n] = pair_decode(word);
        return label(m, n);
    }
};

inline SampleTable build_sample_table(unsigned max_len, unsigned jobs = 1) {
    if (max_len > max_sample_len)
        throw BudgetExceeded("build_sample_table: max_len above " + std::to_string(max_sample_len));
    SampleTable t;
    t.max_len = max_len;
    t.bound = fibonacci(max_len + 2);
    const BalanceGrid grid(t.bound, t.bound, jobs);
    t.labels.resize(static_cast<std::size_t>(t.bound * t.bound));
    for (std::uint64_t m = 0; m < t.bound; ++m)
        for (std::uint64_t n = 0; n < t.bound; ++n)
            t.labels[static_cast<std::size_t>(m * t.bound + n)] = grid.balanced(m, n) ? 1 : 0;
    return t;
}

// ---------------------------------------------------------------------------
// Inference

struct InferredDfa {
    Dfa dfa;
    unsigned max_len = 0;
    unsigned depth = 0;
    bool closed = true; // every state's transitions were determined inside the sample
    std::vector<PairWord> representatives;
};

namespace detail {

struct TrackPrefix {
    std::string m_digits;
    std::string n_digits;

    std::size_t size() const { return m_digits.size(); }
    bool m_ends_one() const { return !m_digits.empty() && m_digits.back() == '1'; }
    bool n_ends_one() const { return !n_digits.empty() && n_digits.back() == '1'; }

    PairWord word() const { return zip_digits(m_digits, n_digits); }
};

struct Suffix {
    unsigned len = 0;
    std::uint64_t m_value = 0;
    std::uint64_t n_value = 0;
    bool m_starts_one = false;
    bool n_starts_one = false;
};

inline std::vector<std::string> valid_tracks(unsigned len) {
    std::vector<std::string> out{""};
    for (unsigned k = 0; k < len; ++k) {
        std::vector<std::string> grown;
        for (const auto& s : out) {
            grown.push_back(s + '0');
            if (s.empty() || s.back() == '0')
                grown.push_back(s + '1');
        }
        out = std::move(grown);
    }
    return out;
}

inline std::vector<Suffix> suffix_catalogue(unsigned depth) {
    std::vector<Suffix> out;
    for (unsigned d = 0; d <= depth; ++d) {
        const auto tracks = valid_tracks(d);
        for (const auto& x : tracks)
            for (const auto& y : tracks)
                out.push_back({d, zeck_decode(x), zeck_decode(y), !x.empty() && x[0] == '1',
                               !y.empty() && y[0] == '1'});
    }
    return out;
}

// Value of `digits` followed by `shift` zeros.
inline std::uint64_t shifted_value(const std::string& digits, unsigned shift) {
    std::uint64_t v = 0;
    for (std::size_t pos = 0; pos < digits.size(); ++pos)
        if (digits[pos] == '1')
            v += fibonacci(digits.size() - 1 - pos + shift + 2);
    return v;
}

inline std::string signature(const SampleTable& table, const std::vector<Suffix>& suffixes, const TrackPrefix& u,
                             unsigned depth) {
    std::vector<std::uint64_t> m_shift(depth + 1), n_shift(depth + 1);
    for (unsigned d = 0; d <= depth; ++d) {
        m_shift[d] = shifted_value(u.m_digits, d);
        n_shift[d] = shifted_value(u.n_digits, d);
    }
    std::string sig(suffixes.size(), '0');
    for (std::size_t k = 0; k < suffixes.size(); ++k) {
        const Suffix& s = suffixes[k];
        if ((s.m_starts_one && u.m_ends_one()) || (s.n_starts_one && u.n_ends_one()))
            continue;
        if (table.label(m_shift[s.len] + s.m_value, n_shift[s.len] + s.n_value))
            sig[k] = '1';
    }
    return sig;
}

} // namespace detail

inline InferredDfa infer_min_dfa(const SampleTable& table, unsigned depth) {
    if (depth > table.max_len)
        throw std::invalid_argument("infer_min_dfa: depth exceeds the sample length");
    const unsigned prefix_len = table.max_len - depth;
    const auto suffixes = detail::suffix_catalogue(depth);
    const std::string dead(suffixes.size(), '0');

    std::unordered_map<std::string, std::size_t> state_of;
    std::vector<detail::TrackPrefix> reps;
    std::vector<std::string> sigs;
    struct Pending {
        std::size_t from;
        std::size_t symbol;
        std::string target;
    };
    std::vector<Pending> pending;

    // Breadth-first over prefixes; only class representatives are expanded,
    // so state numbering follows shortest-path order with symbols 0..3.
    std::deque<std::pair<detail::TrackPrefix, std::optional<std::pair<std::size_t, std::size_t>>>> queue;
    queue.push_back({detail::TrackPrefix{}, std::nullopt});
    InferredDfa result;
    result.max_len = table.max_len;
    result.depth = depth;
    while (!queue.empty()) {
        auto [u, parent] = std::move(queue.front());
        queue.pop_front();
        std::string sig = detail::signature(table, suffixes, u, depth);
        if (parent)
            pending.push_back({parent->first, parent->second, sig});
        if (sig == dead || state_of.count(sig))
            continue;
        const std::size_t id = reps.size();
        state_of.emplace(sig, id);
        reps.push_back(u);
        sigs.push_back(sig);
        if (u.size() >= prefix_len) {
            result.closed = false;
            continue;
        }
        // Leading [0,0] must not change the class.
        detail::TrackPrefix padded{"0" + u.m_digits, "0" + u.n_digits};
        if (detail::signature(table, suffixes, padded, depth) != sig)
            throw InconsistentSample("infer_min_dfa: padding changed the residual of " +
                                     format_pair_word(u.word()));
        for (std::uint8_t a = 0; a < 4; ++a) {
            const PairSymbol s = PairSymbol::from_index(a);
            if ((s.first && u.m_ends_one()) || (s.second && u.n_ends_one()))
                continue;
            queue.push_back({detail::TrackPrefix{u.m_digits + static_cast<char>('0' + s.first),
                                                 u.n_digits + static_cast<char>('0' + s.second)},
                             std::pair<std::size_t, std::size_t>{id, a}});
        }
    }

    Dfa dfa(2, reps.size());
    for (std::size_t s = 0; s < reps.size(); ++s)
        dfa.set_accepting(s, sigs[s][0] == '1'); // suffix 0 is the empty word
    for (const auto& p : pending)
        if (auto it = state_of.find(p.target); it != state_of.end())
            dfa.set_transition(p.from, p.symbol, it->second);
    result.dfa = std::move(dfa);
    for (const auto& r : reps)
        result.representatives.push_back(r.word());
    return result;
}

/// Prefix length used by the stability diagnostic for a given sample length.
inline unsigned stability_prefix_len(unsigned len) {
    return std::min(4u, std::max(1u, len / 2));
}

struct StabilityPoint {
    unsigned len = 0;
    unsigned depth = 0;
    std::size_t states = 0;
    bool closed = false;
};

/// Inferred state counts for each sample length (depth = len - prefix length).
inline std::vector<StabilityPoint> state_count_stability(const std::vector<unsigned>& lens, unsigned jobs = 1) {
    std::vector<StabilityPoint> out;
    for (const unsigned len : lens) {
        if (len < 2)
            throw std::invalid_argument("state_count_stability: sample length must be at least 2");
        const unsigned depth = len - stability_prefix_len(len);
        const SampleTable table = build_sample_table(len, jobs);
        const InferredDfa inferred = infer_min_dfa(table, depth);
        out.push_back({len, depth, inferred.dfa.state_count(), inferred.closed});
    }
    return out;
}

} // namespace rectbal
