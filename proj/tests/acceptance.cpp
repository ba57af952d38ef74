// Acceptance run: one PASS/FAIL line per criterion, with indented detail
// lines above it. Exit status is 0 only when every criterion passes.
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <centrans/centrans.hpp>

using namespace centrans;

namespace {

// Time limits in seconds, and the size bounds each criterion names.
constexpr double kAuditSecs = 1.0;
constexpr double kMinimalityPerAxiomSecs = 60.0;
constexpr double kB5Secs = 300.0;
constexpr double kOracleSecs = 600.0;
constexpr double kCompleteSecs = 900.0;
constexpr double kB7PrimeSecs = 600.0;
constexpr int kB5Bound = 5;
constexpr int kOracleMaxSize = 2;
constexpr int kCompleteBound = 4;
constexpr int kB7PrimeBound = 6;
constexpr int kLTotalSize = 3;
// Extra information for criterion 6, not part of the gate.
constexpr int kSigmaSharpModelSize = 9;

const AxiomCorpus& corpus() { return AxiomCorpus::standard(); }

class Clock {
public:
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SearchConfig sizes(int lo, int hi) {
    SearchConfig c;
    c.min_size = lo;
    c.max_size = hi;
    return c;
}

std::string fmt_secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

void detail(const std::string& s) { std::printf("  %s\n", s.c_str()); }

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
    std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string names(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v)
        out += (out.empty() ? "" : "; ") + s;
    return out.empty() ? "none" : out;
}

// Every model found along the way that satisfies +B2 +B6 +B8; criterion 8
// checks the translation equations in all of them.
std::vector<FiniteStructure> collected;

void collect(const std::optional<FiniteStructure>& m) {
    static const SignedFormulaSet base = [] {
        SignedFormulaSet s;
        for (const char* n : {"B2", "B6", "B8"})
            s.add(n, corpus().axiom(n), Sign::Positive);
        return s;
    }();
    if (m && satisfies_quick(*m, base))
        collected.push_back(*m);
}

// ---- 1 ----------------------------------------------------------------------------

void fixture_counterexamples() {
    const Clock clock;
    bool ok = true;
    int confirmed = 0, claims = 0;
    for (const char* id : {"table1", "table2", "table3", "table4", "table5"}) {
        const FixtureTable& t = fixture(id);
        const FixtureAudit audit = audit_fixture(t);
        for (const auto& c : audit.claims) {
            ++claims;
            // Second route: bind the prefix variables by hand and evaluate the matrix.
            const PrenexForm p = split_prefix(corpus().axiom(c.claim.target));
            Assignment env;
            for (std::size_t i = 0; i < p.vars.size(); ++i)
                env[p.vars[i]] = c.claim.tuple[i];
            const FiniteStructure m = c.constants_used ? t.structure.with_constants(*c.constants_used) : t.structure;
            const bool direct = !evaluate(m, p.matrix, env);
            std::string tuple;
            for (Element e : c.claim.tuple)
                tuple += (tuple.empty() ? "" : ",") + std::to_string(e + 1);
            const bool agree = direct == c.tuple_confirmed;
            detail(std::string(id) + " " + c.claim.target + " at (" + tuple + "): " +
                   (c.tuple_confirmed ? "confirmed" : "NOT confirmed") + (agree ? "" : " (routes disagree)"));
            ok = ok && c.tuple_confirmed && agree;
            confirmed += c.tuple_confirmed ? 1 : 0;
        }
    }
    const double secs = clock.secs();
    detail("elapsed " + fmt_secs(secs));
    verdict(1, ok && secs < kAuditSecs,
            "fixture counterexamples: " + std::to_string(confirmed) + "/" + std::to_string(claims) + " claimed tuples confirmed");
}

// ---- 2 ----------------------------------------------------------------------------

void audit_completeness() {
    bool ok = true, b3_surfaced = false;
    for (const auto& t : fixture_tables()) {
        const FixtureAudit audit = audit_fixture(t);
        for (const auto& c : audit.claims) {
            const AxiomSystem sys = corpus().system(c.claim.system);
            const std::vector<std::string> want = sys.axiom_names();
            std::vector<std::string> got;
            for (const auto& e : c.verdicts.entries) {
                got.push_back(e.name);
                // A failing entry must carry its witness.
                if (!e.satisfied && e.sign == Sign::Positive && !e.witness)
                    ok = false;
            }
            if (got != want)
                ok = false;
            std::vector<std::string> failing;
            for (const auto& e : c.verdicts.entries)
                if (!e.satisfied)
                    failing.push_back(e.name + (e.witness ? " " + e.witness->describe() : ""));
            detail(t.id + " " + c.signed_set + ": " +
                   (c.verdicts.satisfied ? "verified" : "violated: " + names(failing)));
            if (t.id == "table1" && c.claim.system == "SigmaSharp") {
                const EntryVerdict* b3 = c.verdicts.find("B3");
                b3_surfaced = b3 && !b3->satisfied && b3->witness && b3->witness->describe() == "(a,b) = (2,2)";
            }
        }
    }
    detail(std::string("table1 B3 instance L(2,2,sigma(2,2)) ") + (b3_surfaced ? "surfaced" : "missing"));
    verdict(2, ok && b3_surfaced, "audit completeness: every claimed signed set fully reported");
}

// ---- 3 ----------------------------------------------------------------------------

bool minimal_at(const AxiomSystem& sys, const std::string& target, int expected) {
    const Clock clock;
    const SearchOutcome o = find_model_sweep(sys.independence_set(target), sizes(1, expected));
    const double secs = clock.secs();
    collect(o.model);
    bool ok = o.sat() && o.model->size() == expected && secs < kMinimalityPerAxiomSecs &&
              satisfies(*o.model, sys.independence_set(target)).satisfied;
    for (const auto& r : o.ladder)
        if (r.size < expected && r.verdict != Verdict::UnsatExhausted)
            ok = false;
    const auto through = o.exhausted_through();
    detail(sys.name + " " + target + ": model size " + (o.model ? std::to_string(o.model->size()) : "-") +
           ", exhausted through " + (through ? std::to_string(*through) : "-") + ", expected " +
           std::to_string(expected) + " (" + fmt_secs(secs) + ")");
    return ok;
}

void minimality_sizes() {
    const AxiomSystem sharp = corpus().system("SigmaSharp");
    const std::vector<std::pair<std::string, int>> want = {{"A3", 3}, {"B1", 3}, {"B2", 3}, {"B3", 1},
                                                           {"B6", 3}, {"B7", 1}, {"B8", 2}};
    bool ok = true;
    for (const auto& [target, n] : want)
        ok = minimal_at(sharp, target, n) && ok;
    ok = minimal_at(corpus().system("Sigma"), "B5", 2) && ok;
    verdict(3, ok, "minimal independence-model sizes");
}

// ---- 4 ----------------------------------------------------------------------------

void b5_dependence() {
    const Clock clock;
    const auto r = independence(corpus().system("SigmaF"), "B5", sizes(1, kB5Bound));
    const double secs = clock.secs();
    bool all = r.ladder.size() == static_cast<std::size_t>(kB5Bound);
    for (const auto& s : r.ladder)
        all = all && s.verdict == Verdict::UnsatExhausted;
    detail(r.signed_set + ": " + to_string(r.verdict) + " (" + fmt_secs(secs) + ")");
    verdict(4, all && r.verdict == IndependenceVerdict::DependentUpToBound && secs < kB5Secs,
            "SigmaF -B5 has no model through size " + std::to_string(kB5Bound));
}

// ---- 5 ----------------------------------------------------------------------------

std::uint32_t profile_bits(const std::vector<Sign>& signs) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] == Sign::Positive)
            bits |= 1u << i;
    return bits;
}

void oracle_equivalence() {
    const Clock clock;
    const AxiomSystem sharp = corpus().system("SigmaSharp");
    const std::size_t k = sharp.axioms.size();
    int checked = 0, disagreements = 0, sat = 0;
    for (int n = 1; n <= kOracleMaxSize; ++n) {
        const std::set<std::uint32_t> profiles = brute_force_sign_profiles(sharp.axioms, n);
        for (std::uint32_t i = 0; i < (1u << k); ++i) {
            const std::vector<Sign> signs = signs_of_index(i, k);
            const SignedFormulaSet set = sharp.with_signs(signs);
            const bool truth = profiles.count(profile_bits(signs)) != 0;
            sat += truth ? 1 : 0;
            for (bool lnh : {true, false}) {
                SearchConfig c = sizes(n, n);
                c.lnh = lnh;
                const SearchOutcome o = find_model(set, n, c);
                collect(o.model);
                ++checked;
                const bool found = o.verdict == Verdict::Sat && satisfies_quick(*o.model, set);
                if (o.verdict == Verdict::Unknown || found != truth) {
                    ++disagreements;
                    detail("size " + std::to_string(n) + (lnh ? " lnh " : " no-lnh ") + set.describe() +
                           ": finder " + to_string(o.verdict) + ", oracle " + (truth ? "sat" : "unsat"));
                }
            }
        }
    }
    const double secs = clock.secs();
    detail(std::to_string(checked) + " searches, " + std::to_string(sat) + " satisfiable (vector, size) pairs, " +
           std::to_string(disagreements) + " disagreements (" + fmt_secs(secs) + ")");
    verdict(5, disagreements == 0 && secs < kOracleSecs,
            "finder agrees with enumeration on all 256 SigmaSharp vectors at sizes 1-2");
}

// ---- 6 ----------------------------------------------------------------------------

bool complete_for(const std::string& name, double& secs) {
    const AxiomSystem sys = corpus().system(name);
    const Clock clock;
    const CompleteIndependenceReport r = complete_independence(sys, sizes(1, kCompleteBound));
    secs += clock.secs();
    const std::size_t b4 = static_cast<std::size_t>(
        std::find(r.axioms.begin(), r.axioms.end(), "B4") - r.axioms.begin());
    int plus = 0, plus_sat = 0, contradicted = 0;
    std::vector<std::string> missing, exhausted_minus;
    for (const auto& e : r.entries) {
        collect(e.model);
        const bool verified = e.model && e.model->size() <= kCompleteBound && satisfies_quick(*e.model, sys.with_signs(e.signs));
        if (e.signs[b4] == Sign::Positive) {
            ++plus;
            if (e.verdict == Verdict::Sat && verified)
                ++plus_sat;
            else
                missing.push_back(e.label + " [" + to_string(e.verdict) + "]");
        } else if (e.verdict == Verdict::Sat && !verified) {
            ++contradicted;
        }
        if (e.verdict != Verdict::UnsatExhausted)
            continue;
        if (e.signs[b4] == Sign::Negative)
            exhausted_minus.push_back(e.label);
        // Second route on every exhausted vector: no LNH, most-constrained order.
        SearchConfig c = sizes(1, kCompleteBound);
        c.lnh = false;
        c.cell_order = CellOrder::MostConstrainedFirst;
        const SearchOutcome again = find_model_sweep(sys.with_signs(e.signs), c);
        if (again.verdict != Verdict::UnsatExhausted) {
            ++contradicted;
            detail(name + " " + e.label + ": exhausted, but the second search says " + to_string(again.verdict));
        }
    }
    detail(name + ": " + std::to_string(plus_sat) + "/" + std::to_string(plus) + " +B4 vectors sat at size <= " +
           std::to_string(kCompleteBound) + "; " + std::to_string(r.count(Verdict::Sat)) + " sat, " +
           std::to_string(r.count(Verdict::UnsatExhausted)) + " exhausted, " +
           std::to_string(r.count(Verdict::Unknown)) + " unknown of " + std::to_string(r.entries.size()));
    for (const auto& m : missing)
        detail(name + " +B4 vector without a model: " + m);
    if (!exhausted_minus.empty())
        detail(name + " -B4 vectors exhausted through " + std::to_string(kCompleteBound) + ": " +
               std::to_string(exhausted_minus.size()));
    return plus_sat == plus && contradicted == 0;
}

void complete_independence_at_desk_scale() {
    double secs = 0;
    const bool sigma = complete_for("Sigma", secs);
    const bool sharp = complete_for("SigmaSharp", secs);
    detail("elapsed " + fmt_secs(secs));

    // Not gated: where the missing all-positive SigmaSharp model first appears.
    const AxiomSystem sys = corpus().system("SigmaSharp");
    const Clock clock;
    const SearchOutcome o = find_model(sys.with_signs(std::vector<Sign>(sys.axioms.size(), Sign::Positive)),
                                       kSigmaSharpModelSize, sizes(kSigmaSharpModelSize, kSigmaSharpModelSize));
    detail("info: all-positive SigmaSharp at size " + std::to_string(kSigmaSharpModelSize) + ": " +
           to_string(o.verdict) + (o.model && satisfies_quick(*o.model, sys.with_signs(std::vector<Sign>(sys.axioms.size(), Sign::Positive))) ? ", model verified" : "") +
           " (" + fmt_secs(clock.secs()) + ")");
    collect(o.model);

    verdict(6, sigma && sharp && secs < kCompleteSecs,
            "every +B4 vector of Sigma and SigmaSharp has a model of size <= " + std::to_string(kCompleteBound));
}

// ---- 7 ----------------------------------------------------------------------------

void b7prime() {
    const Clock clock;
    const B7PrimeReport r = b7prime_analysis(sizes(1, kB7PrimeBound), kLTotalSize);
    const double secs = clock.secs();
    for (const auto& e : r.entries)
        collect(e.model);
    const bool a = r.b4_verdict == Verdict::UnsatExhausted && r.b4_exhausted_through == kB7PrimeBound;
    detail(r.b4_vector + ": " + to_string(r.b4_verdict) + " through " +
           (r.b4_exhausted_through ? std::to_string(*r.b4_exhausted_through) : "-"));
    bool b = r.l_total_checks.size() == 4;
    for (const auto& c : r.l_total_checks) {
        const bool covers = c.enumerated_through + 1 >= kLTotalSize || c.searched_through >= kLTotalSize;
        b = b && c.holds() && covers;
        detail(c.axiom + " in L-total structures: enumerated through " + std::to_string(c.enumerated_through) +
               ", search " + to_string(c.search_verdict) + " through " + std::to_string(c.searched_through));
    }
    const bool c = r.table6.size() == 2;
    for (const auto& d : r.table6)
        detail("Table 6 diff (" + d.reading + "): matched " + std::to_string(d.matched.size()) + ", only in table " +
               names(d.only_in_table) + ", only computed " + names(d.only_computed));
    detail("sat vectors " + std::to_string(r.sat_vectors.size()) + ", models L-total " +
           (r.models_are_l_total ? "yes" : "no") + " (" + fmt_secs(secs) + ")");
    verdict(7, a && b && c && r.models_are_l_total && secs < kB7PrimeSecs,
            "B7' analysis: -B4 -B7' exhausted through " + std::to_string(kB7PrimeBound) + ", L-total checks, Table 6 diff");
}

// ---- 8 ----------------------------------------------------------------------------

std::vector<std::vector<Element>> all_permutations(int n) {
    std::vector<Element> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<Element>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

void property_suites() {
    const Clock clock;
    const std::vector<std::string> axioms = corpus().axiom_names();
    long negation_failures = 0, permutation_failures = 0, structures = 0;

    // Negation duality and permutation invariance over every structure of size <= 2.
    for (int n = 1; n <= 2; ++n) {
        const auto perms = all_permutations(n);
        brute_detail::for_each_structure(n, true, [&](const FiniteStructure& m) {
            ++structures;
            for (const auto& name : axioms) {
                const Formula& f = corpus().axiom(name);
                const bool v = evaluate(m, f);
                if (evaluate(m, negate(f)) == v || evaluate(m, negate(negate(f))) != v)
                    ++negation_failures;
                for (const auto& pi : perms)
                    if (evaluate(permute(m, pi), f) != v)
                        ++permutation_failures;
            }
            return true;
        });
    }
    // And under every permutation of every fixture.
    for (const auto& t : fixture_tables())
        for (const auto& pi : all_permutations(t.structure.size()))
            for (const auto& name : axioms) {
                const Formula& f = corpus().axiom(name);
                if (mentions_constants(f))
                    continue;
                if (evaluate(permute(t.structure, pi), f) != evaluate(t.structure, f))
                    ++permutation_failures;
            }
    detail("negation duality: " + std::to_string(negation_failures) + " failures over " + std::to_string(structures) +
           " structures");
    detail("permutation invariance: " + std::to_string(permutation_failures) + " failures");

    int round_trip_failures = 0;
    for (const auto& name : axioms) {
        const Formula& f = corpus().axiom(name);
        if (!(parse_formula(render(f)) == f) || render(parse_formula(render(f))) != render(f)) {
            ++round_trip_failures;
            detail("round trip fails for " + name);
        }
    }
    detail("render/parse round trip: " + std::to_string(round_trip_failures) + " failures over " +
           std::to_string(axioms.size()) + " corpus sentences");

    // The translation equations, in every enumerated L-free model of size <= 2
    // and every collected finder model.
    SignedFormulaSet base;
    for (const char* n : {"B2", "B6", "B8"})
        base.add(n, corpus().axiom(n), Sign::Positive);
    std::vector<FiniteStructure> models = collected;
    for (int n = 1; n <= 2; ++n)
        brute_detail::for_each_structure(n, false, [&](const FiniteStructure& m) {
            if (satisfies_quick(m, base))
                models.push_back(m);
            return true;
        });
    long equation_failures = 0;
    std::map<int, int> by_size;
    for (const auto& m : models) {
        ++by_size[m.size()];
        const int n = m.size();
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b) {
                if (m.tau(a, b, a) != b)
                    ++equation_failures;
                for (Element c = 0; c < n; ++c) {
                    if (m.tau(a, b, c) != m.tau(a, c, b))
                        ++equation_failures;
                    for (Element d = 0; d < n; ++d)
                        if (m.tau(m.tau(a, b, c), d, b) != m.tau(c, a, d))
                            ++equation_failures;
                }
            }
    }
    std::string sizes_seen;
    for (const auto& [n, count] : by_size)
        sizes_seen += (sizes_seen.empty() ? "" : ", ") + std::to_string(count) + " of size " + std::to_string(n);
    detail("translation equations: " + std::to_string(equation_failures) + " failures over " +
           std::to_string(models.size()) + " models of +B2 +B6 +B8 (" + sizes_seen + ")");
    detail("elapsed " + fmt_secs(clock.secs()));
    verdict(8, negation_failures == 0 && permutation_failures == 0 && round_trip_failures == 0 &&
                   equation_failures == 0 && !collected.empty(),
            "property suites");
}

}  // namespace

int main() {
    fixture_counterexamples();
    audit_completeness();
    minimality_sizes();
    b5_dependence();
    oracle_equivalence();
    complete_independence_at_desk_scale();
    b7prime();
    property_suites();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
