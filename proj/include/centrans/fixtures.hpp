#pragma once

// The published independence tables, transcribed row by row, and the audit
// that checks them against the signed sets and counterexamples they are
// claimed to exhibit. Tables are stored verbatim, discrepancies included.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "structure.hpp"

namespace centrans {

// "table X in system S is a model of {+(S \ target), -target}, and `tuple`
// falsifies target".
struct FixtureClaim {
    std::string system;
    std::string target;
    std::vector<Element> tuple;  // 0-based, prefix-variable order of the target
};

struct FixtureTable {
    std::string id;
    std::string caption;
    FiniteStructure structure;
    std::vector<FixtureClaim> claims;
};

namespace fixture_detail {
// Values are 1-based digits and '+'/'-' signs, lexicographic in (i,j,k).
inline FiniteStructure from_rows(int n, std::string_view tau, std::string_view lin,
                                 std::optional<ConstantTriple> constants = std::nullopt) {
    std::vector<Element> t;
    std::vector<bool> l;
    for (char c : tau)
        t.push_back(c - '1');
    for (char c : lin)
        l.push_back(c == '+');
    return FiniteStructure(n, std::move(t), std::move(l), constants);
}
}  // namespace fixture_detail

inline const std::vector<FixtureTable>& fixture_tables() {
    using fixture_detail::from_rows;
    static const std::vector<FixtureTable> tables = {
        {"table1", "model of (Sigma \\ B5) + ~B5; also used for ~B8 over SigmaSharp",
         from_rows(2, "22222222", "-+-+-+--"),
         {{"Sigma", "B5", {0, 1, 1}}, {"SigmaSharp", "B8", {0, 1}}}},
        {"table2", "model of (SigmaSharp \\ A3) + ~A3",
         from_rows(3, "123231312" "312123231" "231312123", "+-++-+-++" "+-+++-++-" "-++++--++"),
         {{"SigmaSharp", "A3", {2, 1, 0, 0}}}},
        {"table3", "model of (SigmaSharp \\ B1) + ~B1",
         from_rows(3, "123231312" "312123231" "231312123", "+++-++-++" "+-+++++-+" "++-++-+++"),
         {{"SigmaSharp", "B1", {0, 1, 2}}}},
        {"table4", "model of (SigmaSharp \\ B2) + ~B2",
         from_rows(3, "111222222" "111222111" "111222222", "++-++-++-" "++-++-++-" "++-++-++-"),
         {{"SigmaSharp", "B2", {0, 2, 0}}}},
        {"table5", "model of (SigmaSharp \\ B6) + ~B6",
         from_rows(3, "222222222" "112112221" "222222222", "++-++-++-" "++-++-++-" "++-++-++-"),
         {{"SigmaSharp", "B6", {1, 1, 0, 1}}}},
        {"b3unit", "one-element structure with L false: model of (SigmaSharp \\ B3) + ~B3",
         from_rows(1, "1", "-"), {{"SigmaSharp", "B3", {0, 0}}}},
        // Constructed: the one-element structure with L true, constants forced.
        {"b7unit", "one-element structure with L true: model of (SigmaSharp \\ B7) + ~B7",
         from_rows(1, "1", "+", ConstantTriple{0, 0, 0}), {{"SigmaSharp", "B7", {}}}},
    };
    return tables;
}

inline const FixtureTable& fixture(const std::string& id) {
    for (const auto& t : fixture_tables())
        if (t.id == id)
            return t;
    std::vector<std::string> ids;
    for (const auto& t : fixture_tables())
        ids.push_back(t.id);
    throw UnknownNameError("fixture", id, suggest_names(id, ids));
}

struct ClaimAudit {
    FixtureClaim claim;
    std::string signed_set;  // e.g. "+A3 +B1 ... -B5"
    std::optional<ConstantTriple> constants_used;
    std::string constants_note;
    SatisfactionReport verdicts;
    bool tuple_confirmed = false;  // the claimed tuple falsifies the target's matrix
    std::string tuple_note;
};

struct FixtureAudit {
    std::string id;
    std::string caption;
    int size = 0;
    std::vector<ClaimAudit> claims;

    bool all_tuples_confirmed() const {
        for (const auto& c : claims)
            if (!c.tuple_confirmed)
                return false;
        return true;
    }
    bool all_signed_sets_verified() const {
        for (const auto& c : claims)
            if (!c.verdicts.satisfied)
                return false;
        return true;
    }
};

// Whether `tuple` is a counterexample to the universal sentence `f`.
inline bool confirms_counterexample(const FiniteStructure& m, const Formula& f, const std::vector<Element>& tuple,
                                    std::string* note = nullptr) {
    const PrenexForm p = split_prefix(f);
    if (p.prefix == PrenexForm::Prefix::Existential) {
        if (note)
            *note = "target is existential; counterexample tuples do not apply";
        return false;
    }
    if (tuple.size() != p.vars.size()) {
        if (note)
            *note = "tuple has " + std::to_string(tuple.size()) + " components, target binds " +
                    std::to_string(p.vars.size());
        return false;
    }
    Assignment env;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= m.size()) {
            if (note)
                *note = "tuple leaves the domain";
            return false;
        }
        env[p.vars[i]] = tuple[i];
    }
    try {
        const bool holds = evaluate(m, p.matrix, env);
        if (note)
            *note = holds ? "matrix holds at the claimed tuple" : "matrix fails at the claimed tuple";
        return !holds;
    } catch (const EvaluationError& e) {
        if (note)
            *note = e.what();
        return false;
    }
}

inline FixtureAudit audit_fixture(const FixtureTable& table) {
    const AxiomCorpus& corpus = AxiomCorpus::standard();
    FixtureAudit audit{table.id, table.caption, table.structure.size(), {}};
    for (const auto& claim : table.claims) {
        ClaimAudit ca;
        ca.claim = claim;
        const AxiomSystem system = corpus.system(claim.system);
        const SignedFormulaSet set = system.independence_set(claim.target);
        ca.signed_set = set.describe();

        FiniteStructure m = table.structure;
        if (!m.constants() && set.mentions_constants()) {
            const auto* b7 = set.find("B7");
            const Sign goal = b7 ? b7->sign : Sign::Positive;
            try {
                m = choose_constants(m, goal);
                ca.constants_note = std::string("chosen as the first ") +
                                    (goal == Sign::Positive ? "L-false" : "L-true") + " triple";
            } catch (const NoSuchTripleError& e) {
                ca.constants_note = e.what();
            }
        } else if (m.constants()) {
            ca.constants_note = "fixed by the fixture";
        }
        ca.constants_used = m.constants();

        if (m.constants() || !set.mentions_constants()) {
            ca.verdicts = satisfies(m, set);
        } else {
            // Without constants only the constant-free entries can be judged.
            ca.verdicts.satisfied = false;
            for (const auto& e : set.entries()) {
                if (mentions_constants(e.formula)) {
                    EntryVerdict v;
                    v.name = e.name;
                    v.sign = e.sign;
                    v.note = "not evaluated: " + ca.constants_note;
                    ca.verdicts.entries.push_back(v);
                } else {
                    SignedFormulaSet one;
                    one.add(e.name, e.formula, e.sign);
                    ca.verdicts.entries.push_back(satisfies(m, one).entries.front());
                }
            }
        }

        const Formula& target = corpus.axiom(claim.target);
        if (is_quantifier_free(target)) {
            // B7: the counterexample is the constant interpretation itself.
            ca.tuple_confirmed = m.constants() && !evaluate(m, target);
            ca.tuple_note = ca.tuple_confirmed ? "sentence fails under the constants" : "sentence holds";
        } else {
            ca.tuple_confirmed = confirms_counterexample(m, target, claim.tuple, &ca.tuple_note);
        }
        audit.claims.push_back(std::move(ca));
    }
    return audit;
}

inline FixtureAudit audit_fixture(const std::string& id) { return audit_fixture(fixture(id)); }

}  // namespace centrans
