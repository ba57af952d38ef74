// centrans: command-line front end for the independence lab.
//
// Exit codes: 0 satisfied / verified / complete, 10 exhausted without a
// model (or a check failed), 20 a budget ran out, 2 usage or input errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "centrans/centrans.hpp"

namespace {

using namespace centrans;

constexpr int exit_ok = 0;
constexpr int exit_unsat = 10;
constexpr int exit_unknown = 20;
constexpr int exit_usage = 2;

struct Options {
    std::string system;
    std::string target;
    std::vector<std::string> drop;
    std::vector<std::string> negate;
    std::string assertion;
    std::string problem;
    std::string model_path;
    std::string fixture_id;
    int min_size = 1;
    int max_size = 6;
    double timeout_secs = 0;
    std::uint64_t node_budget = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string lnh = "on";
    std::string cell_order = "lexicographic";
    std::string format = "text";
    std::string emit_model;
    bool verbose = false;
    double hard_timeout_secs = 0;
    int hard_max_size = 0;
    int l_total_size = 3;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SearchConfig make_config(const Options& o) {
    SearchConfig c;
    c.min_size = o.min_size;
    c.max_size = o.max_size;
    c.lnh = o.lnh == "on";
    c.cell_order = o.cell_order == "lexicographic" ? CellOrder::Lexicographic : CellOrder::MostConstrainedFirst;
    if (o.timeout_secs > 0)
        c.time_budget_secs = o.timeout_secs;
    if (o.node_budget > 0)
        c.node_budget = o.node_budget;
    c.jobs = o.jobs;
    c.validate();
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << text;
}

bool wants_json_file(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

// Model files for B7' are named with "B7p".
std::string file_safe(std::string s) {
    for (char& c : s)
        if (c == '\'')
            c = 'p';
    return s;
}

void emit_model(const std::string& path, const FiniteStructure& m) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty())
        std::filesystem::create_directories(parent, ec);
    write_file(path, wants_json_file(path) ? to_model_json(m).dump(2) + "\n" : to_model_text(m));
}

const ProblemFile& scope_for(const Options& o) {
    static ProblemFile loaded;
    static bool have = false;
    if (o.problem.empty())
        return corpus_scope();
    if (!have) {
        loaded = parse_problem(read_file(o.problem));
        have = true;
    }
    return loaded;
}

std::string canonical_axiom(const std::string& name) { return AxiomCorpus::canonical(name); }

AxiomSystem lookup_system(const Options& o) {
    if (o.system.empty())
        throw UsageError("--system is required");
    return scope_for(o).system(o.system);
}

std::vector<SignedName> parse_assertion(const std::string& text) {
    std::vector<SignedName> out;
    std::istringstream is(text);
    std::string w;
    while (is >> w) {
        SignedName s;
        if (w[0] == '+' || w[0] == '-') {
            s.sign = w[0] == '+' ? Sign::Positive : Sign::Negative;
            w = w.substr(1);
        }
        if (w.empty())
            throw UsageError("empty name in --assert");
        s.name = canonical_axiom(w);
        for (const auto& prev : out)
            if (prev.name == s.name && prev.sign != s.sign)
                throw UsageError("--assert gives " + s.name + " both signs");
        out.push_back(s);
    }
    return out;
}

// --system members, minus --drop, then --negate and --assert on top.
SignedFormulaSet build_set(const Options& o) {
    const ProblemFile& scope = scope_for(o);
    struct Item {
        std::string name;
        Formula formula;
        Sign sign;
    };
    std::vector<Item> items;
    const auto place = [&items](Item s) {
        for (auto& it : items)
            if (it.name == s.name) {
                it.sign = s.sign;
                return;
            }
        items.push_back(std::move(s));
    };
    // `key` may be qualified ("corpus.B3"); entries are named without the prefix.
    const auto entry = [&](const std::string& key, Sign sign) -> Item {
        const std::string name = ProblemFile::display_name(key);
        for (const auto& it : items)
            if (it.name == name)
                return {name, it.formula, sign};
        return {name, scope.axiom(key), sign};
    };
    if (!o.system.empty()) {
        const AxiomSystem sys = scope.system(o.system);
        for (const auto& d : o.drop)
            sys.axiom(canonical_axiom(d));
        for (const auto& a : sys.axioms) {
            bool dropped = false;
            for (const auto& d : o.drop)
                dropped = dropped || canonical_axiom(d) == a.name;
            if (!dropped)
                items.push_back({a.name, a.formula, Sign::Positive});
        }
    } else if (!o.drop.empty()) {
        throw UsageError("--drop needs --system");
    }
    for (const auto& n : o.negate)
        place(entry(canonical_axiom(n), Sign::Negative));
    for (const auto& s : parse_assertion(o.assertion))
        place(entry(s.name, s.sign));
    if (items.empty())
        throw UsageError("no formulas selected; use --system, --negate or --assert");
    SignedFormulaSet out;
    for (const auto& it : items)
        out.add(it.name, it.formula, it.sign);
    return out;
}

void verbose_ladder(const Options& o, const std::vector<SizeResult>& ladder) {
    if (!o.verbose)
        return;
    for (const auto& r : ladder)
        std::cerr << "size " << r.size << ": " << to_string(r.verdict) << ", " << r.stats.decisions << " decisions, "
                  << r.stats.propagations << " propagations, " << r.stats.elapsed_ms << " ms\n";
}

int verdict_exit(Verdict v) {
    return v == Verdict::Sat ? exit_ok : v == Verdict::Unknown ? exit_unknown : exit_unsat;
}

int print(const Options& o, const std::string& command, const nlohmann::json& result, const std::string& text,
          int code, const nlohmann::json& config = nullptr) {
    if (o.format == "json") {
        nlohmann::json j{{"command", command}, {"config", config}, {"result", result}, {"exit_code", code}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << text;
    }
    return code;
}

// ---- subcommands ------------------------------------------------------------------

int cmd_check_model(const Options& o) {
    FiniteStructure m = parse_model(read_file(o.model_path));
    const SignedFormulaSet set = build_set(o);
    std::string note;
    if (!m.constants() && set.mentions_constants()) {
        const auto* b7 = set.find("B7");
        const Sign goal = b7 ? b7->sign : Sign::Positive;
        try {
            m = choose_constants(m, goal);
            const auto& c = *m.constants();
            note = "constants chosen: (" + std::to_string(c[0] + 1) + "," + std::to_string(c[1] + 1) + "," +
                   std::to_string(c[2] + 1) + ")";
        } catch (const NoSuchTripleError& e) {
            note = e.what();
            const nlohmann::json result{{"signed_set", set.describe()}, {"constants_note", note}, {"report", nullptr}};
            return print(o, "check-model", result, "cannot evaluate: " + note + "\n", exit_unsat);
        }
    }
    const SatisfactionReport r = satisfies(m, set);
    std::string text = "model " + o.model_path + " (size " + std::to_string(m.size()) + ") against " + set.describe() + "\n";
    if (!note.empty())
        text += note + "\n";
    text += to_text(r);
    const nlohmann::json result{{"signed_set", set.describe()},
                                {"constants_note", note},
                                {"report", to_json(r)}};
    return print(o, "check-model", result, text, r.satisfied ? exit_ok : exit_unsat);
}

int cmd_find(const Options& o) {
    const SearchConfig cfg = make_config(o);
    const SignedFormulaSet set = build_set(o);
    const SearchOutcome out = find_model_sweep(set, cfg);
    verbose_ladder(o, out.ladder);
    if (out.model && !o.emit_model.empty())
        emit_model(o.emit_model, *out.model);
    std::string text = set.describe() + ": " + to_string(out.verdict);
    if (out.model)
        text += ", model of size " + std::to_string(out.model->size()) + "\n" + to_model_text(*out.model);
    else
        text += "\n";
    nlohmann::json result = to_json(out);
    result["signed_set"] = set.describe();
    return print(o, "find", result, text, verdict_exit(out.verdict), to_json(cfg));
}

int cmd_independence(const Options& o) {
    if (o.target.empty())
        throw UsageError("--target is required");
    const SearchConfig cfg = make_config(o);
    const AxiomSystem sys = lookup_system(o);
    const IndependenceReport r = independence(sys, canonical_axiom(o.target), cfg);
    verbose_ladder(o, r.ladder);
    if (r.model && !o.emit_model.empty())
        emit_model(o.emit_model, *r.model);
    const int code = r.verdict == IndependenceVerdict::IndependentWithModel ? exit_ok
                     : r.verdict == IndependenceVerdict::Unknown            ? exit_unknown
                                                                            : exit_unsat;
    return print(o, "independence", to_json(r), to_text(r), code, to_json(cfg));
}

int cmd_minimality(const Options& o) {
    const SearchConfig cfg = make_config(o);
    const AxiomSystem sys = lookup_system(o);
    const auto reports = minimality(sys, cfg);
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    std::vector<Verdict> verdicts;
    for (const auto& r : reports) {
        verbose_ladder(o, r.ladder);
        arr.push_back(to_json(r));
        text += to_text(r);
        verdicts.push_back(r.verdict == IndependenceVerdict::IndependentWithModel ? Verdict::Sat
                           : r.verdict == IndependenceVerdict::Unknown            ? Verdict::Unknown
                                                                                  : Verdict::UnsatExhausted);
        if (r.model && !o.emit_model.empty())
            emit_model(o.emit_model + "/" + sys.name + "-" + file_safe(r.target) + ".model", *r.model);
    }
    const nlohmann::json result{{"system", sys.name}, {"reports", arr}};
    return print(o, "minimality", result, text, exit_code_for(verdicts), to_json(cfg));
}

int cmd_complete(const Options& o) {
    const SearchConfig cfg = make_config(o);
    const AxiomSystem sys = lookup_system(o);
    CompleteOptions opts;
    if (o.hard_timeout_secs > 0)
        opts.hard_time_budget_secs = o.hard_timeout_secs;
    if (o.hard_max_size > 0)
        opts.hard_max_size = o.hard_max_size;
    const CompleteIndependenceReport r = complete_independence(sys, cfg, opts);
    if (!o.emit_model.empty())
        for (const auto& e : r.entries)
            if (e.model)
                emit_model(o.emit_model + "/" + sys.name + "-" + file_safe(sign_string(e.signs)) + ".model", *e.model);
    const int code = r.completely_independent() ? exit_ok
                     : r.count(Verdict::Unknown) ? exit_unknown
                                                 : exit_unsat;
    nlohmann::json config = to_json(cfg);
    config["hard_timeout_secs"] = opts.hard_time_budget_secs ? nlohmann::json(*opts.hard_time_budget_secs) : nlohmann::json(nullptr);
    config["hard_max_size"] = opts.hard_max_size ? nlohmann::json(*opts.hard_max_size) : nlohmann::json(nullptr);
    return print(o, "complete", to_json(r), to_text(r), code, config);
}

int cmd_b7prime(const Options& o) {
    const SearchConfig cfg = make_config(o);
    const B7PrimeReport r = b7prime_analysis(cfg, o.l_total_size);
    bool checks = r.b4_verdict == Verdict::UnsatExhausted && r.models_are_l_total;
    for (const auto& c : r.l_total_checks)
        checks = checks && c.holds();
    const int code = checks ? exit_ok : (r.b4_verdict == Verdict::Unknown || !r.unknown_vectors.empty()) ? exit_unknown
                                                                                                        : exit_unsat;
    nlohmann::json config = to_json(cfg);
    config["l_total_size"] = o.l_total_size;
    return print(o, "b7prime", to_json(r), to_text(r), code, config);
}

int cmd_audit_fixtures(const Options& o) {
    std::vector<FixtureAudit> audits;
    if (!o.fixture_id.empty())
        audits.push_back(audit_fixture(o.fixture_id));
    else
        for (const auto& t : fixture_tables())
            audits.push_back(audit_fixture(t));
    bool confirmed = true;
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    for (const auto& a : audits) {
        confirmed = confirmed && a.all_tuples_confirmed();
        arr.push_back(to_json(a));
        text += to_text(a) + "\n";
    }
    text += confirmed ? "all claimed counterexamples confirmed\n" : "some claimed counterexamples NOT confirmed\n";
    return print(o, "audit-fixtures", nlohmann::json{{"fixtures", arr}, {"all_tuples_confirmed", confirmed}}, text,
                 confirmed ? exit_ok : exit_unsat);
}

int cmd_run(const Options& o) {
    if (o.problem.empty())
        throw UsageError("--problem is required");
    const ProblemFile& pf = scope_for(o);
    SearchConfig base = make_config(o);
    std::vector<Verdict> verdicts;
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    for (const auto& rec : pf.tasks()) {
        SearchConfig cfg = base;
        std::visit(
            [&](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                cfg.min_size = t.min_size;
                cfg.max_size = t.max_size.value_or(std::max(base.max_size, t.min_size));
                if constexpr (std::is_same_v<T, FindModelTask>) {
                    const SignedFormulaSet set = pf.signed_set(t.entries);
                    const SearchOutcome out = find_model_sweep(set, cfg);
                    verbose_ladder(o, out.ladder);
                    verdicts.push_back(out.verdict);
                    nlohmann::json j = to_json(out);
                    j["task"] = "find-model";
                    j["line"] = rec.line;
                    j["signed_set"] = set.describe();
                    j["config"] = to_json(cfg);
                    arr.push_back(j);
                    text += "line " + std::to_string(rec.line) + ": find-model " + set.describe() + ": " +
                            to_string(out.verdict) +
                            (out.model ? ", size " + std::to_string(out.model->size()) : std::string()) + "\n";
                } else if constexpr (std::is_same_v<T, IndependenceTask>) {
                    const IndependenceReport r = independence(pf.system(t.system), t.target, cfg);
                    verbose_ladder(o, r.ladder);
                    verdicts.push_back(r.verdict == IndependenceVerdict::IndependentWithModel ? Verdict::Sat
                                       : r.verdict == IndependenceVerdict::Unknown            ? Verdict::Unknown
                                                                                              : Verdict::UnsatExhausted);
                    nlohmann::json j = to_json(r);
                    j["task"] = "independence";
                    j["line"] = rec.line;
                    arr.push_back(j);
                    text += "line " + std::to_string(rec.line) + ": " + to_text(r);
                } else {
                    const CompleteIndependenceReport r = complete_independence(pf.system(t.system), cfg);
                    verdicts.push_back(r.completely_independent() ? Verdict::Sat
                                       : r.count(Verdict::Unknown) ? Verdict::Unknown
                                                                   : Verdict::UnsatExhausted);
                    nlohmann::json j = to_json(r);
                    j["task"] = "complete-independence";
                    j["line"] = rec.line;
                    arr.push_back(j);
                    text += "line " + std::to_string(rec.line) + ": " + to_text(r);
                }
            },
            rec.task);
    }
    if (pf.tasks().empty())
        text += "no tasks\n";
    return print(o, "run", nlohmann::json{{"problem", o.problem}, {"tasks", arr}}, text, exit_code_for(verdicts),
                 to_json(base));
}

// ---- argument wiring ---------------------------------------------------------------

void add_search_flags(CLI::App* sub, Options& o) {
    sub->add_option("--min-size", o.min_size, "smallest domain size searched")->capture_default_str();
    sub->add_option("--max-size", o.max_size, "largest domain size searched")->capture_default_str();
    sub->add_option("--timeout-secs", o.timeout_secs, "time budget per size, 0 for none")->capture_default_str();
    sub->add_option("--node-budget", o.node_budget, "decision budget per size, 0 for none")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    sub->add_option("--lnh", o.lnh, "least-number heuristic")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    sub->add_option("--cell-order", o.cell_order, "decision order")
        ->check(CLI::IsMember({"lexicographic", "most-constrained-first"}))
        ->capture_default_str();
}

void add_common_flags(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_flag("--verbose", o.verbose, "per-size statistics on standard error");
    sub->add_option("--problem", o.problem, "problem file supplying axioms and systems");
}

void add_set_flags(CLI::App* sub, Options& o) {
    sub->add_option("--system", o.system, "axiom system whose members are asserted");
    sub->add_option("--drop", o.drop, "remove an axiom of --system");
    sub->add_option("--negate", o.negate, "deny an axiom");
    sub->add_option("--assert", o.assertion, "signed names, e.g. \"+B3 -B7\"");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Independence lab for central translation structures"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check-model", "evaluate a model file against a signed set");
    check->add_option("model", o.model_path, "model file (text or JSON)")->required();
    add_set_flags(check, o);
    add_common_flags(check, o);

    auto* find = app.add_subcommand("find", "search for a model of a signed set");
    add_set_flags(find, o);
    add_search_flags(find, o);
    add_common_flags(find, o);
    find->add_option("--emit-model", o.emit_model, "write the model found to this file");

    auto* indep = app.add_subcommand("independence", "search for an independence model of one axiom");
    indep->add_option("--system", o.system, "axiom system")->required();
    indep->add_option("--target", o.target, "axiom to negate")->required();
    add_search_flags(indep, o);
    add_common_flags(indep, o);
    indep->add_option("--emit-model", o.emit_model, "write the model found to this file");

    auto* mini = app.add_subcommand("minimality", "independence searches for every axiom of a system");
    mini->add_option("--system", o.system, "axiom system")->required();
    add_search_flags(mini, o);
    add_common_flags(mini, o);
    mini->add_option("--emit-model", o.emit_model, "directory for the models found");

    auto* complete = app.add_subcommand("complete", "check all sign vectors of a system");
    complete->add_option("--system", o.system, "axiom system")->required();
    add_search_flags(complete, o);
    add_common_flags(complete, o);
    complete->add_option("--emit-model", o.emit_model, "directory for the models found");
    complete->add_option("--hard-timeout-secs", o.hard_timeout_secs, "time budget for the {-B4, rest +} vector")
        ->capture_default_str();
    complete->add_option("--hard-max-size", o.hard_max_size, "size bound for the {-B4, rest +} vector")
        ->capture_default_str();

    auto* b7p = app.add_subcommand("b7prime", "sign vectors compatible with -B7'");
    add_search_flags(b7p, o);
    add_common_flags(b7p, o);
    b7p->add_option("--l-total-size", o.l_total_size, "size bound for the L-total checks")->capture_default_str();

    auto* audit = app.add_subcommand("audit-fixtures", "audit the embedded tables");
    audit->add_option("--id", o.fixture_id, "audit a single fixture");
    audit->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    auto* run = app.add_subcommand("run", "execute the tasks of a problem file");
    add_search_flags(run, o);
    run->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    run->add_flag("--verbose", o.verbose, "per-size statistics on standard error");
    run->add_option("problem", o.problem, "problem file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*check)
            return cmd_check_model(o);
        if (*find)
            return cmd_find(o);
        if (*indep)
            return cmd_independence(o);
        if (*mini)
            return cmd_minimality(o);
        if (*complete)
            return cmd_complete(o);
        if (*b7p)
            return cmd_b7prime(o);
        if (*audit)
            return cmd_audit_fixtures(o);
        if (*run)
            return cmd_run(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ModelFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
