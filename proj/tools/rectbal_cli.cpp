// rectbal: command-line front end for the rectangle balance analyzers.
//
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <rectbal/rectbal.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace rectbal;

enum class Format { Text, Json, Csv };

struct Globals {
    unsigned jobs = default_jobs();
    Format format = Format::Text;
    std::uint64_t seed = 20240601;
    std::optional<std::uint64_t> budget;
};

// A command result: either one record or a table of flat records.
struct Result {
    std::string headline;
    ordered_json record = ordered_json::object();
    std::vector<ordered_json> rows;
    bool is_table = false;
    int status = 0;
};

class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string scalar_text(const ordered_json& v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k)
                s += ';';
            s += scalar_text(v[k]);
        }
        return s;
    }
    if (v.is_object())
        return v.dump();
    return v.dump();
}

std::string csv_cell(const ordered_json& v) {
    std::string s = scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (const char c : s) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void write_csv(std::ostream& out, const std::vector<ordered_json>& rows) {
    if (rows.empty())
        return;
    bool first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
        out << (first ? "" : ",") << it.key();
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            out << (first ? "" : ",") << csv_cell(it.value());
            first = false;
        }
        out << "\n";
    }
}

void render(std::ostream& out, const Result& r, Format format) {
    if (r.is_table) {
        if (format == Format::Json)
            out << ordered_json(r.rows).dump(2) << "\n";
        else
            write_csv(out, r.rows);
        return;
    }
    switch (format) {
    case Format::Json:
        out << r.record.dump(2) << "\n";
        break;
    case Format::Csv:
        write_csv(out, {r.record});
        break;
    case Format::Text:
        if (!r.headline.empty())
            out << r.headline << "\n";
        for (auto it = r.record.begin(); it != r.record.end(); ++it)
            out << it.key() << ": " << scalar_text(it.value()) << "\n";
        break;
    }
}

void write_output_file(const std::string& path, const Result& r, Format format, const std::vector<std::string>& argv) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + path);
    render(out, r, format == Format::Text ? Format::Csv : format);
    std::ofstream manifest(path + ".manifest.json", std::ios::binary);
    ordered_json m;
    m["arguments"] = argv;
    m["output"] = path;
    m["rows"] = r.is_table ? r.rows.size() : 1;
    manifest << m.dump(2) << "\n";
}

ordered_json values_json(const std::vector<std::uint64_t>& values) {
    return ordered_json(values);
}

std::string witness_text(const Witness& w) {
    std::ostringstream s;
    s << w.i << ',' << w.j << ',' << w.t_i << ',' << w.t_j;
    return s.str();
}

SequenceKind kind_from(const std::string& name) {
    if (auto k = parse_kind(name))
        return *k;
    throw CLI::ValidationError("--kind", "unknown word kind " + name);
}

// ---------------------------------------------------------------------------

Result fib_bal(std::uint64_t m, std::uint64_t n, const std::string& method, std::uint64_t horizon) {
    Result r;
    BalanceVerdict v;
    if (method == "exact")
        v = exact_balance(m, n);
    else if (method == "scan")
        v = lemma1_scan(m, n, horizon);
    else {
        v.m = m;
        v.n = n;
        v.method = BalanceMethod::Zeckendorf;
        v.status = zeck_characterization(m, n) ? BalanceStatus::Balanced : BalanceStatus::Unbalanced;
    }
    r.headline = status_name(v.status);
    r.record["m"] = m;
    r.record["n"] = n;
    r.record["verdict"] = status_name(v.status);
    r.record["method"] = method_name(v.method);
    if (v.horizon)
        r.record["horizon"] = *v.horizon;
    if (v.method == BalanceMethod::Exact)
        r.record["value_set"] = values_json(v.value_set);
    if (v.witness)
        r.record["witness"] = witness_text(*v.witness);
    return r;
}

Result fib_sweep(std::uint64_t max, unsigned jobs) {
    Result r;
    r.is_table = true;
    const BalanceGrid grid(max + 1, max + 1, jobs);
    for (std::uint64_t m = 0; m <= max; ++m)
        for (std::uint64_t n = 0; n <= max; ++n) {
            ordered_json row;
            row["m"] = m;
            row["n"] = n;
            row["balanced"] = grid.balanced(m, n) ? 1 : 0;
            row["value_set"] = values_json(grid.value_set(m, n));
            row["method"] = "exact";
            r.rows.push_back(std::move(row));
        }
    return r;
}

Result fib_diverse(std::uint64_t k) {
    const DiverseIdentityReport d = diverse_identities(k);
    Result r;
    r.headline = d.holds() ? "identities hold" : "identities fail";
    r.record["k"] = k;
    r.record["even_side"] = d.even_side;
    r.record["even_i"] = d.even_i;
    r.record["even_j"] = d.even_j;
    r.record["even_difference"] = d.even_difference;
    r.record["even_expected"] = 2 * k;
    r.record["odd_side"] = d.odd_side;
    r.record["odd_i"] = d.odd_i;
    r.record["odd_j"] = d.odd_j;
    r.record["odd_difference"] = d.odd_difference;
    r.record["odd_expected"] = 2 * k + 1;
    r.record["method"] = "direct";
    r.status = d.holds() ? 0 : 1;
    return r;
}

ordered_json two_balance_record(const TwoBalanceReport& rep) {
    ordered_json rec;
    rec["m"] = rep.m;
    rec["n"] = rep.n;
    rec["verdict"] = rep.balanced_up_to_horizon() ? "2-balanced up to horizon" : "not 2-balanced";
    rec["method"] = "scan";
    rec["horizon"] = rep.horizon;
    rec["min_counts"] = rep.min_count;
    rec["max_counts"] = rep.max_count;
    if (auto w = rep.witness()) {
        std::ostringstream s;
        s << "letter " << int(w->letter) << ": " << w->i << ',' << w->j << ',' << w->count_i << ',' << w->count_j;
        rec["witness"] = s.str();
    }
    return rec;
}

Result trib_bal2(std::uint64_t m, std::uint64_t n, std::uint64_t horizon) {
    const TwoBalanceReport rep = two_balance_scan(m, n, horizon);
    Result r;
    r.record = two_balance_record(rep);
    r.headline = r.record["verdict"].get<std::string>();
    return r;
}

Result trib_list2(std::uint64_t limit, std::uint64_t horizon) {
    std::vector<std::uint64_t> balanced;
    std::vector<std::string> excluded;
    for (const auto& rep : scan_2xn(limit, horizon)) {
        if (rep.balanced_up_to_horizon()) {
            balanced.push_back(rep.n);
        } else {
            const auto w = *rep.witness();
            std::ostringstream s;
            s << rep.n << ":letter" << int(w.letter) << '@' << w.i << '/' << w.j;
            excluded.push_back(s.str());
        }
    }
    Result r;
    std::ostringstream head;
    for (std::size_t k = 0; k < balanced.size(); ++k)
        head << (k ? "," : "") << balanced[k];
    r.headline = head.str();
    r.record["m"] = 2;
    r.record["limit"] = limit;
    r.record["method"] = "scan";
    r.record["horizon"] = horizon;
    r.record["balanced"] = balanced;
    r.record["excluded"] = excluded;
    return r;
}

Result trib_corner(std::uint64_t p, std::optional<std::uint64_t> m, std::uint64_t search_limit) {
    const WordTable tr2 = make_word(SequenceKind::TribonacciRecoded, search_limit);
    const CornerWitness w = find_corner_witness(tr2, p, search_limit);
    Result r;
    r.record["p"] = w.p;
    r.record["i"] = w.i;
    r.record["j"] = w.j;
    ordered_json counts;
    if (m) {
        if (*m < 3 || *m > p + 3)
            throw CLI::ValidationError("--m", "need 3 <= m <= p + 3");
        const std::uint64_t n = p + 6 - *m;
        const WordTable tr = make_word(SequenceKind::Tribonacci, search_limit);
        counts["m"] = *m;
        counts["n"] = n;
        counts["letter2_i"] = tr.rect_count(2, w.i, *m, n);
        counts["letter2_j"] = tr.rect_count(2, w.j, *m, n);
    } else {
        counts["letter2_i"] = tr2.factor_count(2, w.i, p + 5);
        counts["letter2_j"] = tr2.factor_count(2, w.j, p + 5);
    }
    r.record["counts"] = counts;
    if (!corner_witness_valid(tr2, w))
        throw VerificationFailure("corner witness failed validation");
    return r;
}

Result tm_excess(std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    const std::int64_t direct = excess(i, m, n);
    const std::int64_t reduced = excess_parity_reduced(i, m, n);
    if (direct != reduced)
        throw VerificationFailure("parity formula disagrees with direct count");
    Result r;
    r.headline = std::to_string(direct);
    r.record["i"] = i;
    r.record["m"] = m;
    r.record["n"] = n;
    r.record["excess"] = direct;
    r.record["method"] = "direct+parity";
    return r;
}

ordered_json profile_record(const ExcessProfile& p) {
    ordered_json rec;
    rec["m"] = p.m;
    rec["n"] = p.n;
    rec["balance"] = p.balance();
    rec["min_s"] = p.min_s;
    rec["max_s"] = p.max_s;
    rec["argmin"] = p.argmin;
    rec["argmax"] = p.argmax;
    rec["method"] = "scan";
    rec["horizon"] = p.horizon;
    return rec;
}

Result tm_profile(std::uint64_t m, std::uint64_t n, std::optional<std::uint64_t> horizon) {
    const ExcessProfile p = horizon ? excess_profile(m, n, *horizon) : excess_profile(m, n);
    Result r;
    r.headline = "balance " + std::to_string(p.balance());
    r.record = profile_record(p);
    if (!p.parity_consistent)
        throw VerificationFailure("excess parity differs from mn");
    return r;
}

Result tm_table(std::uint64_t max, std::uint64_t horizon) {
    const BalanceClassTable t = balance_class_table(max, horizon);
    Result r;
    r.is_table = true;
    for (const auto& p : t.profiles)
        r.rows.push_back(profile_record(p));
    return r;
}

Result dfa_infer(unsigned max_len, unsigned depth, const std::string& out, unsigned jobs) {
    const SampleTable table = build_sample_table(max_len, jobs);
    const InferredDfa inferred = infer_min_dfa(table, depth);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open output file " + out);
        write_dfa(f, inferred.dfa);
    }
    Result r;
    r.headline = std::to_string(inferred.dfa.state_count()) + " states";
    r.record["max_len"] = max_len;
    r.record["depth"] = depth;
    r.record["states"] = inferred.dfa.state_count();
    r.record["closed"] = inferred.closed;
    if (!out.empty())
        r.record["file"] = out;
    else {
        std::ostringstream s;
        write_dfa(s, inferred.dfa);
        r.record["dfa"] = s.str();
    }
    return r;
}

Result dfa_run_cmd(const std::string& file, std::uint64_t m, std::uint64_t n) {
    std::ifstream f(file);
    if (!f)
        throw CLI::ValidationError("--file", "cannot open " + file);
    const Dfa d = read_dfa(f);
    const PairWord word = pair_encode(m, n);
    const bool accepted = dfa_run(d, word);
    Result r;
    r.headline = accepted ? "accept" : "reject";
    r.record["m"] = m;
    r.record["n"] = n;
    r.record["encoding"] = format_pair_word(word);
    r.record["accepted"] = accepted;
    return r;
}

Result num_encode(const std::string& system, const std::string& value) {
    Result r;
    std::string digits;
    if (system == "neg2") {
        digits = negabin_encode(std::stoll(value)).digits;
    } else {
        if (!value.empty() && value[0] == '-')
            throw CLI::ValidationError("value", "must be non-negative for " + system);
        const std::uint64_t v = std::stoull(value);
        digits = system == "zeck" ? zeck_encode(v).digits : trib_encode(v).digits;
    }
    r.headline = digits.empty() ? "0" : digits;
    r.record["system"] = system;
    r.record["value"] = value;
    r.record["digits"] = r.headline;
    return r;
}

Result num_decode(const std::string& system, const std::string& digits) {
    Result r;
    std::string value;
    if (system == "neg2")
        value = std::to_string(negabin_decode(digits));
    else if (system == "zeck")
        value = std::to_string(zeck_decode(digits));
    else
        value = std::to_string(trib_decode(digits));
    r.headline = value;
    r.record["system"] = system;
    r.record["digits"] = digits;
    r.record["value"] = value;
    return r;
}

Result word_dump(const std::string& kind_name_arg, std::uint64_t length, std::optional<std::uint64_t> budget) {
    const SequenceKind kind = kind_from(kind_name_arg);
    const WordTable w = make_word(kind, length, budget);
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k)
        s += static_cast<char>('0' + w[k]);
    Result r;
    r.headline = s;
    r.record["kind"] = kind_name(kind);
    r.record["length"] = length;
    return r;
}

Result rect_cmd(bool counts_only, const std::string& kind_arg, std::uint64_t i, std::uint64_t m, std::uint64_t n) {
    const RectangleQuery q{i, m, n, kind_from(kind_arg)};
    Result r;
    r.record["kind"] = kind_arg;
    r.record["i"] = i;
    r.record["m"] = m;
    r.record["n"] = n;
    if (counts_only) {
        const LetterCountVector c = rect_letter_counts(q);
        r.record["counts"] = c.counts;
        std::ostringstream s;
        for (std::size_t k = 0; k < c.counts.size(); ++k)
            s << (k ? " " : "") << c.counts[k];
        r.headline = s.str();
    } else {
        const std::uint64_t s = rect_sum(q);
        r.record["sum"] = s;
        r.headline = std::to_string(s);
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balance analysis of word rectangles over the Fibonacci, Tribonacci and Thue-Morse words"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Globals g;
    std::string format_name = "text";
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", g.seed, "Seed for sampled checks");
    app.add_option("--budget", g.budget, "Cap on generated word length (overrides RECTBAL_BUDGET)");

    std::function<Result()> action;
    std::string out_path;

    // fib
    auto* fib = app.add_subcommand("fib", "Fibonacci rectangle balance")->require_subcommand(1);
    std::uint64_t m = 0, n = 0, i = 0, horizon = 0, k = 1, max = 0, limit = 48, p = 0;
    std::string method = "exact";
    {
        auto* bal = fib->add_subcommand("bal", "Decide whether (m,n) is balanced");
        bal->add_option("--m", m)->required();
        bal->add_option("--n", n)->required();
        bal->add_option("--method", method)->check(CLI::IsMember({"exact", "scan", "zeck"}));
        bal->add_option("--horizon", horizon, "Scan horizon (scan method)");
        bal->callback([&] {
            action = [&] { return fib_bal(m, n, method, horizon ? horizon : default_scan_horizon); };
        });

        auto* sweep = fib->add_subcommand("sweep", "Exact verdicts for all 0 <= m,n <= max");
        sweep->add_option("--max", max)->required();
        sweep->add_option("--out", out_path, "CSV output file");
        sweep->callback([&] { action = [&] { return fib_sweep(max, g.jobs); }; });

        auto* diverse = fib->add_subcommand("diverse", "Check the diverse-rectangle identities for k");
        diverse->add_option("--k", k)->required()->check(CLI::PositiveNumber);
        diverse->callback([&] { action = [&] { return fib_diverse(k); }; });
    }

    // trib
    auto* trib = app.add_subcommand("trib", "Tribonacci rectangle 2-balance")->require_subcommand(1);
    std::uint64_t search_limit = default_corner_search_limit;
    std::optional<std::uint64_t> corner_m;
    {
        auto* bal2 = trib->add_subcommand("bal2", "Scan (m,n) for 2-balance");
        bal2->add_option("--m", m)->required()->check(CLI::PositiveNumber);
        bal2->add_option("--n", n)->required()->check(CLI::PositiveNumber);
        bal2->add_option("--horizon", horizon);
        bal2->callback([&] {
            action = [&] { return trib_bal2(m, n, horizon ? horizon : default_trib_horizon); };
        });

        auto* list2 = trib->add_subcommand("list2", "2-balanced 2 x n shapes for n <= limit");
        list2->add_option("--limit", limit);
        list2->add_option("--horizon", horizon);
        list2->callback([&] {
            action = [&] { return trib_list2(limit, horizon ? horizon : default_trib_horizon); };
        });

        auto* corner = trib->add_subcommand("corner", "Find a corner witness for p = m + n - 6");
        corner->add_option("--p", p)->required();
        corner->add_option("--m", corner_m, "Report rectangle counts for this m");
        corner->add_option("--search-limit", search_limit);
        corner->callback([&] {
            action = [&] {
                Result r = trib_corner(p, corner_m, search_limit);
                return r;
            };
        });
    }

    // tm
    auto* tm = app.add_subcommand("tm", "Thue-Morse rectangle excess")->require_subcommand(1);
    std::optional<std::uint64_t> tm_horizon;
    {
        auto* ex = tm->add_subcommand("excess", "Excess 2|A|_1 - mn of one rectangle");
        ex->add_option("--i", i)->required();
        ex->add_option("--m", m)->required();
        ex->add_option("--n", n)->required();
        ex->callback([&] { action = [&] { return tm_excess(i, m, n); }; });

        auto* prof = tm->add_subcommand("profile", "Excess range and balance class of (m,n)");
        prof->add_option("--m", m)->required()->check(CLI::PositiveNumber);
        prof->add_option("--n", n)->required()->check(CLI::PositiveNumber);
        prof->add_option("--horizon", tm_horizon)->check(CLI::PositiveNumber);
        prof->callback([&] { action = [&] { return tm_profile(m, n, tm_horizon); }; });

        auto* table = tm->add_subcommand("table", "Balance classes for 1 <= m,n <= max");
        table->add_option("--max", max)->required()->check(CLI::PositiveNumber);
        table->add_option("--horizon", tm_horizon)->check(CLI::PositiveNumber);
        table->add_option("--out", out_path, "CSV output file");
        table->callback([&] { action = [&] { return tm_table(max, tm_horizon.value_or(default_tm_horizon)); }; });
    }

    // dfa
    auto* dfa = app.add_subcommand("dfa", "Balanced-pair automaton")->require_subcommand(1);
    unsigned max_len = 14, depth = 10;
    std::string dfa_file;
    std::vector<std::uint64_t> pair;
    {
        auto* infer = dfa->add_subcommand("infer", "Infer the automaton from exact labels");
        infer->add_option("--max-len", max_len)->check(CLI::Range(1u, max_sample_len));
        infer->add_option("--depth", depth);
        infer->add_option("--out", out_path, "DFA output file");
        infer->callback([&] { action = [&] { return dfa_infer(max_len, depth, out_path, g.jobs); }; });

        auto* run = dfa->add_subcommand("run", "Run a saved automaton on the encoding of (m,n)");
        run->add_option("--file", dfa_file)->required();
        run->add_option("--pair", pair)->required()->expected(2);
        run->callback([&] { action = [&] { return dfa_run_cmd(dfa_file, pair.at(0), pair.at(1)); }; });
    }

    // num
    auto* num = app.add_subcommand("num", "Numeration systems")->require_subcommand(1);
    std::string system = "zeck", value;
    for (const bool encode : {true, false}) {
        auto* sub = num->add_subcommand(encode ? "encode" : "decode", encode ? "Value to digits" : "Digits to value");
        sub->add_option("--system", system)->check(CLI::IsMember({"zeck", "trib", "neg2"}));
        sub->add_option("value", value, encode ? "Integer" : "Digit string")->required();
        sub->callback([&, encode] {
            action = [&, encode] { return encode ? num_encode(system, value) : num_decode(system, value); };
        });
    }

    // word
    auto* word = app.add_subcommand("word", "Word generators")->require_subcommand(1);
    std::string kind = "fib";
    std::uint64_t length = 0;
    {
        auto* dump = word->add_subcommand("dump", "Print a prefix of a word");
        dump->add_option("--kind", kind)->check(CLI::IsMember({"fib", "sturmian-a", "trib", "trib2", "tm"}));
        dump->add_option("--length", length)->required();
        dump->callback([&] { action = [&] { return word_dump(kind, length, g.budget); }; });
    }

    // rect
    auto* rect = app.add_subcommand("rect", "Rectangle sums and letter counts")->require_subcommand(1);
    for (const bool counts : {false, true}) {
        auto* sub = rect->add_subcommand(counts ? "counts" : "sum", counts ? "Letter counts" : "Sum of entries");
        sub->add_option("--kind", kind)->check(CLI::IsMember({"fib", "sturmian-a", "trib", "trib2", "tm"}));
        sub->add_option("--i", i)->required();
        sub->add_option("--m", m)->required();
        sub->add_option("--n", n)->required();
        sub->callback([&, counts] { action = [&, counts] { return rect_cmd(counts, kind, i, m, n); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    g.format = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Text;
    if (g.budget)
        setenv("RECTBAL_BUDGET", std::to_string(*g.budget).c_str(), 1);

    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const Result r = action();
        const bool writes_table_file = r.is_table && !out_path.empty();
        if (writes_table_file) {
            write_output_file(out_path, r, g.format, args);
            std::cout << "wrote " << r.rows.size() << " rows to " << out_path << "\n";
        } else {
            render(std::cout, r, g.format);
        }
        return r.status;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const NotFoundWithinLimit& e) {
        std::cerr << "not found: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
