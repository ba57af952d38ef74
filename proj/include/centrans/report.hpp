#pragma once

// Text and JSON renderings of the lab reports. JSON objects always carry the
// same keys for a given report kind; absent values are null.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finder.hpp"
#include "fixtures.hpp"
#include "lab.hpp"
#include "structure.hpp"

namespace centrans {

using nlohmann::json;

inline json to_json(const SearchConfig& c) {
    return json{{"min_size", c.min_size},
                {"max_size", c.max_size},
                {"lnh", c.lnh},
                {"cell_order", to_string(c.cell_order)},
                {"time_budget_secs", c.time_budget_secs ? json(*c.time_budget_secs) : json(nullptr)},
                {"node_budget", c.node_budget ? json(*c.node_budget) : json(nullptr)},
                {"jobs", c.jobs}};
}

inline json to_json(const SearchStats& s) {
    return json{{"decisions", s.decisions}, {"propagations", s.propagations}, {"elapsed_ms", s.elapsed_ms}};
}

inline json to_json(const std::vector<SizeResult>& ladder) {
    json out = json::array();
    for (const auto& r : ladder) {
        json j = to_json(r.stats);
        j["size"] = r.size;
        j["verdict"] = to_string(r.verdict);
        out.push_back(std::move(j));
    }
    return out;
}

inline json model_json(const std::optional<FiniteStructure>& m) { return m ? to_model_json(*m) : json(nullptr); }

inline json to_json(const SearchOutcome& o) {
    return json{{"verdict", to_string(o.verdict)},
                {"model_size", o.model_size() ? json(*o.model_size()) : json(nullptr)},
                {"sizes", to_json(o.ladder)},
                {"totals", to_json(o.totals())},
                {"model", model_json(o.model)}};
}

inline json to_json(const ViolationWitness& w) {
    json vars = json::object();
    json tuple = json::array();
    for (const auto& [v, e] : w.assignment) {
        vars[v] = e + 1;
        tuple.push_back(e + 1);
    }
    return json{{"assignment", vars}, {"tuple", tuple}, {"text", w.describe()}};
}

inline json to_json(const SatisfactionReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(json{{"name", e.name},
                               {"sign", std::string(1, sign_char(e.sign))},
                               {"sentence_true", e.sentence_true},
                               {"satisfied", e.satisfied},
                               {"witness", e.witness ? to_json(*e.witness) : json(nullptr)},
                               {"note", e.note}});
    return json{{"satisfied", r.satisfied}, {"entries", entries}};
}

inline json to_json(const IndependenceReport& r) {
    return json{{"system", r.system},
                {"target", r.target},
                {"signed_set", r.signed_set},
                {"config", to_json(r.config)},
                {"verdict", to_string(r.verdict)},
                {"model_size", r.model_size() ? json(*r.model_size()) : json(nullptr)},
                {"exhausted_through", r.bound ? json(*r.bound) : json(nullptr)},
                {"sizes", to_json(r.ladder)},
                {"model", model_json(r.model)}};
}

inline json to_json(const VectorOutcome& e) {
    return json{{"index", e.index},
                {"signs", sign_string(e.signs)},
                {"label", e.label},
                {"verdict", to_string(e.verdict)},
                {"model_size", e.model ? json(e.model->size()) : json(nullptr)},
                {"method", e.method},
                {"sizes", to_json(e.ladder)}};
}

inline json to_json(const CompleteIndependenceReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(to_json(e));
    return json{{"system", r.system},
                {"axioms", r.axioms},
                {"config", to_json(r.config)},
                {"vectors", r.entries.size()},
                {"counts",
                 {{"sat", r.count(Verdict::Sat)},
                  {"unsat_exhausted", r.count(Verdict::UnsatExhausted)},
                  {"unknown", r.count(Verdict::Unknown)}}},
                {"completely_independent", r.completely_independent()},
                {"entries", entries}};
}

inline json to_json(const Table6Diff& d) {
    return json{{"reading", d.reading},
                {"agrees", d.agrees()},
                {"matched", d.matched},
                {"only_in_table", d.only_in_table},
                {"only_computed", d.only_computed}};
}

inline json to_json(const B7PrimeReport& r) {
    json checks = json::array();
    for (const auto& c : r.l_total_checks)
        checks.push_back(json{{"axiom", c.axiom},
                              {"holds", c.holds()},
                              {"enumerated_true", c.enumerated_true},
                              {"enumerated_through", c.enumerated_through},
                              {"search_verdict", to_string(c.search_verdict)},
                              {"searched_through", c.searched_through}});
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(to_json(e));
    json diffs = json::array();
    for (const auto& d : r.table6)
        diffs.push_back(to_json(d));
    return json{{"axioms", r.axioms},
                {"config", to_json(r.config)},
                {"sat_vectors", r.sat_vectors},
                {"exhausted_vectors", r.exhausted_vectors},
                {"unknown_vectors", r.unknown_vectors},
                {"exceptions", r.exceptions()},
                {"models_are_l_total", r.models_are_l_total},
                {"b4_vector",
                 {{"label", r.b4_vector},
                  {"verdict", to_string(r.b4_verdict)},
                  {"exhausted_through", r.b4_exhausted_through ? json(*r.b4_exhausted_through) : json(nullptr)}}},
                {"l_total_checks", checks},
                {"table6_columns", table6_columns()},
                {"table6_rows", r.table6_rows},
                {"table6_diff", diffs},
                {"entries", entries}};
}

inline json to_json(const FixtureAudit& a) {
    json claims = json::array();
    for (const auto& c : a.claims) {
        json tuple = json::array();
        for (Element e : c.claim.tuple)
            tuple.push_back(e + 1);
        json constants = nullptr;
        if (c.constants_used)
            constants = json::array({(*c.constants_used)[0] + 1, (*c.constants_used)[1] + 1, (*c.constants_used)[2] + 1});
        claims.push_back(json{{"system", c.claim.system},
                              {"target", c.claim.target},
                              {"claimed_tuple", tuple},
                              {"tuple_confirmed", c.tuple_confirmed},
                              {"tuple_note", c.tuple_note},
                              {"signed_set", c.signed_set},
                              {"signed_set_verified", c.verdicts.satisfied},
                              {"constants", constants},
                              {"constants_note", c.constants_note},
                              {"verdicts", to_json(c.verdicts)}});
    }
    return json{{"id", a.id},
                {"caption", a.caption},
                {"size", a.size},
                {"all_tuples_confirmed", a.all_tuples_confirmed()},
                {"all_signed_sets_verified", a.all_signed_sets_verified()},
                {"claims", claims}};
}

// ---- text ----------------------------------------------------------------------

namespace report_detail {
inline std::string ladder_text(const std::vector<SizeResult>& ladder) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ladder.size(); ++i)
        os << (i ? ", " : "") << ladder[i].size << ':' << to_string(ladder[i].verdict);
    return os.str();
}
inline std::string config_text(const SearchConfig& c) {
    std::ostringstream os;
    os << "sizes " << c.min_size << ".." << c.max_size << ", lnh " << (c.lnh ? "on" : "off") << ", "
       << to_string(c.cell_order) << ", jobs " << c.jobs;
    if (c.time_budget_secs)
        os << ", time budget " << *c.time_budget_secs << "s";
    if (c.node_budget)
        os << ", node budget " << *c.node_budget;
    return os.str();
}
}  // namespace report_detail

inline std::string to_text(const SatisfactionReport& r) {
    std::ostringstream os;
    for (const auto& e : r.entries) {
        os << "  " << sign_char(e.sign) << e.name << ": sentence " << (e.sentence_true ? "true" : "false") << ", "
           << (e.satisfied ? "ok" : "VIOLATED");
        if (e.witness)
            os << (e.sentence_true ? "  witness " : "  counterexample ") << e.witness->describe();
        if (!e.note.empty())
            os << "  (" << e.note << ")";
        os << '\n';
    }
    os << (r.satisfied ? "satisfied\n" : "not satisfied\n");
    return os.str();
}

inline std::string to_text(const IndependenceReport& r) {
    std::ostringstream os;
    os << r.target << " in " << r.system << ": " << to_string(r.verdict);
    if (r.model)
        os << ", model of size " << r.model->size();
    else if (r.bound)
        os << ", no model through size " << *r.bound;
    os << "\n  sizes: " << report_detail::ladder_text(r.ladder) << '\n';
    return os.str();
}

inline std::string to_text(const CompleteIndependenceReport& r) {
    std::ostringstream os;
    os << r.system << " (" << report_detail::config_text(r.config) << ")\n";
    for (const auto& a : r.axioms)
        os << a << (a.size() < 3 ? "  " : " ");
    os << " verdict\n";
    for (const auto& e : r.entries) {
        for (std::size_t i = 0; i < e.signs.size(); ++i)
            os << sign_char(e.signs[i]) << std::string(std::max<std::size_t>(r.axioms[i].size(), 2), ' ');
        os << to_string(e.verdict);
        if (e.model)
            os << " n=" << e.model->size();
        if (e.method != "search")
            os << " (" << e.method << ')';
        os << '\n';
    }
    os << "sat " << r.count(Verdict::Sat) << ", unsat-exhausted " << r.count(Verdict::UnsatExhausted) << ", unknown "
       << r.count(Verdict::Unknown) << " of " << r.entries.size() << '\n';
    os << (r.completely_independent() ? "completely independent\n" : "not shown completely independent\n");
    return os.str();
}

inline std::string to_text(const B7PrimeReport& r) {
    std::ostringstream os;
    os << "vectors over";
    for (const auto& a : r.axioms)
        os << ' ' << a;
    os << ", each with -B7' (" << report_detail::config_text(r.config) << ")\n";
    os << "sat: " << r.sat_vectors.size() << " (" << r.exceptions() << " with a negated axiom), unsat-exhausted: "
       << r.exhausted_vectors.size() << ", unknown: " << r.unknown_vectors.size() << '\n';
    for (const auto& v : r.sat_vectors)
        os << "  sat " << v << '\n';
    os << "models L-total: " << (r.models_are_l_total ? "yes" : "NO") << '\n';
    os << r.b4_vector << ": " << to_string(r.b4_verdict);
    if (r.b4_exhausted_through)
        os << " (no model through size " << *r.b4_exhausted_through << ')';
    os << '\n';
    for (const auto& c : r.l_total_checks)
        os << c.axiom << " in L-total structures: " << (c.holds() ? "true" : "NOT ESTABLISHED") << " (enumerated through "
           << c.enumerated_through << ", search " << to_string(c.search_verdict) << " through " << c.searched_through
           << ")\n";
    for (const auto& d : r.table6) {
        os << "Table 6 diff, " << d.reading << ": " << d.matched.size() << " matched, " << d.only_in_table.size()
           << " only in table, " << d.only_computed.size() << " only computed\n";
        for (const auto& s : d.only_in_table)
            os << "  table only:    " << s << '\n';
        for (const auto& s : d.only_computed)
            os << "  computed only: " << s << '\n';
    }
    return os.str();
}

inline std::string to_text(const FixtureAudit& a) {
    std::ostringstream os;
    os << a.id << " (size " << a.size << "): " << a.caption << '\n';
    for (const auto& c : a.claims) {
        os << " claim: -" << c.claim.target << " over " << c.claim.system;
        if (!c.claim.tuple.empty()) {
            os << " at (";
            for (std::size_t i = 0; i < c.claim.tuple.size(); ++i)
                os << (i ? "," : "") << c.claim.tuple[i] + 1;
            os << ')';
        }
        os << ": " << (c.tuple_confirmed ? "confirmed" : "NOT CONFIRMED") << " (" << c.tuple_note << ")\n";
        if (c.constants_used)
            os << "  constants (" << (*c.constants_used)[0] + 1 << ',' << (*c.constants_used)[1] + 1 << ','
               << (*c.constants_used)[2] + 1 << "), " << c.constants_note << '\n';
        else if (!c.constants_note.empty())
            os << "  constants: " << c.constants_note << '\n';
        os << to_text(c.verdicts);
    }
    return os.str();
}

}  // namespace centrans
