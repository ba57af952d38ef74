#pragma once

// Drivers built on the model finder: single-axiom independence, minimality
// ladders, complete-independence enumeration, constant reinterpretation for
// B4 counter-models, and the B7' analysis.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "brute_force.hpp"
#include "corpus.hpp"
#include "finder.hpp"
#include "structure.hpp"

namespace centrans {

// ---- independence ------------------------------------------------------------

enum class IndependenceVerdict : std::uint8_t { IndependentWithModel, DependentUpToBound, Unknown };

inline const char* to_string(IndependenceVerdict v) {
    switch (v) {
    case IndependenceVerdict::IndependentWithModel: return "independent-with-model";
    case IndependenceVerdict::DependentUpToBound: return "dependent-up-to-bound";
    case IndependenceVerdict::Unknown: return "unknown";
    }
    return "?";
}

struct IndependenceReport {
    std::string system;
    std::string target;
    std::string signed_set;
    SearchConfig config;
    IndependenceVerdict verdict = IndependenceVerdict::Unknown;
    std::optional<FiniteStructure> model;
    std::optional<int> bound;  // largest size through which every size was exhausted
    std::vector<SizeResult> ladder;

    std::optional<int> model_size() const {
        return model ? std::optional<int>(model->size()) : std::nullopt;
    }
};

inline IndependenceReport independence(const AxiomSystem& x, const std::string& target, const SearchConfig& cfg) {
    IndependenceReport r;
    r.system = x.name;
    r.target = target;
    r.config = cfg;
    const SignedFormulaSet set = x.independence_set(target);
    r.signed_set = set.describe();
    SearchOutcome o = find_model_sweep(set, cfg);
    r.ladder = o.ladder;
    r.bound = o.exhausted_through();
    switch (o.verdict) {
    case Verdict::Sat:
        r.verdict = IndependenceVerdict::IndependentWithModel;
        r.model = std::move(o.model);
        break;
    case Verdict::UnsatExhausted: r.verdict = IndependenceVerdict::DependentUpToBound; break;
    case Verdict::Unknown: r.verdict = IndependenceVerdict::Unknown; break;
    }
    return r;
}

// One independence report per axiom, in system order.
inline std::vector<IndependenceReport> minimality(const AxiomSystem& x, const SearchConfig& cfg) {
    std::vector<IndependenceReport> out;
    for (const auto& a : x.axioms)
        out.push_back(independence(x, a.name, cfg));
    return out;
}

// ---- sign vectors --------------------------------------------------------------

// Vector index i over k axioms: axiom j is negated when bit (k-1-j) of i is
// set, so index 0 is all-positive and indices run in +/- lexicographic order.
inline std::vector<Sign> signs_of_index(std::uint32_t index, std::size_t k) {
    std::vector<Sign> s(k, Sign::Positive);
    for (std::size_t j = 0; j < k; ++j)
        if ((index >> (k - 1 - j)) & 1u)
            s[j] = Sign::Negative;
    return s;
}

inline std::uint32_t index_of_signs(const std::vector<Sign>& s) {
    std::uint32_t i = 0;
    for (Sign x : s)
        i = (i << 1) | (x == Sign::Negative ? 1u : 0u);
    return i;
}

inline std::string sign_string(const std::vector<Sign>& s) {
    std::string out;
    for (Sign x : s)
        out += sign_char(x);
    return out;
}

// Runs work(i) for i in [0, count) on up to `jobs` threads.
template <class Work>
void parallel_for(std::size_t count, unsigned jobs, Work&& work) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (n == 1) {
        run();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < n; ++t)
            threads.emplace_back(run);
        for (auto& t : threads)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
}

// ---- constant reinterpretation -------------------------------------------------

struct B4Violation {
    Element a, b, c, x;  // L(a,b,c) but not L(x, tau(a,b,x), tau(a,c,x))
};

inline std::vector<B4Violation> b4_violations(const FiniteStructure& m) {
    std::vector<B4Violation> out;
    const int n = m.size();
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c) {
                if (!m.lin(a, b, c))
                    continue;
                for (Element x = 0; x < n; ++x)
                    if (!m.lin(x, m.tau(a, b, x), m.tau(a, c, x)))
                        out.push_back({a, b, c, x});
            }
    return out;
}

struct Reinterpretation {
    FiniteStructure structure;
    B4Violation witness;
    ConstantTriple triple;
    // True when the triple is (a, tau(a,b,d), tau(a,c,d)) built from the
    // witness; false when that triple is a triangle in every witness and the
    // witness's own collinear triple (a,b,c) was used instead.
    bool base_point_triple = true;
};

// Replaces the constants of a B4 counter-model by a collinear triple, so
// that B7 fails while every constant-free sentence keeps its truth value.
inline Reinterpretation reinterpret_constants_detailed(const FiniteStructure& m) {
    const auto violations = b4_violations(m);
    if (violations.empty())
        throw std::invalid_argument("structure satisfies B4; there is no witness to reinterpret the constants with");
    for (const auto& w : violations) {
        const ConstantTriple t{w.a, m.tau(w.a, w.b, w.x), m.tau(w.a, w.c, w.x)};
        if (m.lin(t[0], t[1], t[2]))
            return {m.with_constants(t), w, t, true};
    }
    const auto& w = violations.front();
    const ConstantTriple t{w.a, w.b, w.c};
    return {m.with_constants(t), w, t, false};
}

inline FiniteStructure reinterpret_constants(const FiniteStructure& m) {
    return reinterpret_constants_detailed(m).structure;
}

// ---- complete independence ------------------------------------------------------

struct VectorOutcome {
    std::uint32_t index = 0;
    std::vector<Sign> signs;
    std::string label;  // "+A3 -B1 ..."
    Verdict verdict = Verdict::Unknown;
    std::optional<FiniteStructure> model;
    std::vector<SizeResult> ladder;
    std::string method = "search";  // search | extended-search | reinterpreted-constants
};

struct CompleteOptions {
    // Budget for the {-B4, rest +} vector; unset means the ordinary config.
    std::optional<double> hard_time_budget_secs;
    std::optional<std::uint64_t> hard_node_budget;
    std::optional<int> hard_max_size;
    // Derive {-B4, -B7} from the {-B4} model instead of searching for it.
    bool derive_b4_b7 = true;
};

struct CompleteIndependenceReport {
    std::string system;
    std::vector<std::string> axioms;
    SearchConfig config;
    std::vector<VectorOutcome> entries;  // in index order

    std::size_t count(Verdict v) const {
        return static_cast<std::size_t>(
            std::count_if(entries.begin(), entries.end(), [v](const VectorOutcome& e) { return e.verdict == v; }));
    }
    bool completely_independent() const { return count(Verdict::Sat) == entries.size(); }
    const VectorOutcome& entry(const std::vector<Sign>& signs) const { return entries.at(index_of_signs(signs)); }
};

inline std::size_t max_complete_axioms() { return 16; }

inline CompleteIndependenceReport complete_independence(const AxiomSystem& x, const SearchConfig& cfg,
                                                        const CompleteOptions& opts = {}) {
    cfg.validate();
    const std::size_t k = x.axioms.size();
    if (k > max_complete_axioms())
        throw std::invalid_argument("complete independence is limited to 16 axioms");
    CompleteIndependenceReport r;
    r.system = x.name;
    r.axioms = x.axiom_names();
    r.config = cfg;
    const std::size_t total = std::size_t{1} << k;
    r.entries.resize(total);

    std::optional<std::uint32_t> hard_b4, hard_b4_b7;
    if (x.contains("B4")) {
        std::vector<Sign> s(k, Sign::Positive);
        const auto pos = [&](const std::string& n) {
            return static_cast<std::size_t>(
                std::find(r.axioms.begin(), r.axioms.end(), n) - r.axioms.begin());
        };
        s[pos("B4")] = Sign::Negative;
        hard_b4 = index_of_signs(s);
        if (x.contains("B7") && opts.derive_b4_b7) {
            s[pos("B7")] = Sign::Negative;
            hard_b4_b7 = index_of_signs(s);
        }
    }

    SearchConfig inner = cfg;
    inner.jobs = 1;
    SearchConfig hard = inner;
    if (opts.hard_time_budget_secs)
        hard.time_budget_secs = opts.hard_time_budget_secs;
    if (opts.hard_node_budget)
        hard.node_budget = opts.hard_node_budget;
    if (opts.hard_max_size)
        hard.max_size = std::max(hard.min_size, *opts.hard_max_size);

    const auto run = [&](std::uint32_t i, const SearchConfig& c, const char* method) {
        VectorOutcome& e = r.entries[i];
        e.index = i;
        e.signs = signs_of_index(i, k);
        const SignedFormulaSet set = x.with_signs(e.signs);
        e.label = set.describe();
        SearchOutcome o = find_model_sweep(set, c);
        e.verdict = o.verdict;
        e.model = std::move(o.model);
        e.ladder = std::move(o.ladder);
        e.method = method;
    };

    std::vector<std::uint32_t> work;
    for (std::uint32_t i = 0; i < total; ++i)
        if (!hard_b4_b7 || i != *hard_b4_b7)
            work.push_back(i);
    // The extended search goes first so it overlaps the rest.
    if (hard_b4)
        std::stable_partition(work.begin(), work.end(), [&](std::uint32_t i) { return i == *hard_b4; });
    parallel_for(work.size(), cfg.jobs, [&](std::size_t w) {
        const std::uint32_t i = work[w];
        const bool extended = hard_b4 && i == *hard_b4 &&
                              (opts.hard_time_budget_secs || opts.hard_node_budget || opts.hard_max_size);
        run(i, extended ? hard : inner, extended ? "extended-search" : "search");
    });

    if (hard_b4_b7) {
        const VectorOutcome& src = r.entries[*hard_b4];
        VectorOutcome& e = r.entries[*hard_b4_b7];
        e.index = *hard_b4_b7;
        e.signs = signs_of_index(*hard_b4_b7, k);
        const SignedFormulaSet set = x.with_signs(e.signs);
        e.label = set.describe();
        bool derived = false;
        if (src.model) {
            FiniteStructure m = reinterpret_constants(*src.model);
            if (satisfies_quick(m, set)) {
                e.verdict = Verdict::Sat;
                e.model = std::move(m);
                e.method = "reinterpreted-constants";
                derived = true;
            }
        }
        if (!derived)
            run(*hard_b4_b7, inner, "search");
    }
    return r;
}

// ---- B7' analysis ----------------------------------------------------------------

struct Table6Diff {
    std::string reading;  // which column labelling was applied to the printed rows
    std::vector<std::string> matched;
    std::vector<std::string> only_in_table;
    std::vector<std::string> only_computed;
    bool agrees() const { return only_in_table.empty() && only_computed.empty(); }
};

struct LTotalCheck {
    std::string axiom;
    bool enumerated_true = false;  // evaluator over every L-total structure of size <= enumerated_through
    int enumerated_through = 0;
    Verdict search_verdict = Verdict::Unknown;  // search for an L-total counter-model
    int searched_through = 0;
    bool holds() const { return enumerated_true && search_verdict == Verdict::UnsatExhausted; }
};

struct B7PrimeReport {
    std::vector<std::string> axioms;  // the system without B7', in order
    SearchConfig config;
    std::vector<VectorOutcome> entries;  // every vector is joined with -B7'
    bool models_are_l_total = true;

    std::vector<std::string> sat_vectors;
    std::vector<std::string> exhausted_vectors;
    std::vector<std::string> unknown_vectors;

    std::string b4_vector;  // {-B4, rest +, -B7'}
    Verdict b4_verdict = Verdict::Unknown;
    std::optional<int> b4_exhausted_through;

    std::vector<LTotalCheck> l_total_checks;

    std::vector<std::string> table6_rows;  // as printed: A3 B1 B2 B3 B4 B5 B6 B8
    std::vector<Table6Diff> table6;         // [0] as printed; [1] with the B2 and B3 columns exchanged

    std::size_t exceptions() const {
        std::size_t out = 0;
        for (const auto& e : entries)
            if (e.verdict == Verdict::Sat && e.index != 0)
                ++out;
        return out;
    }
};

inline const std::vector<std::string>& table6_printed_rows() {
    static const std::vector<std::string> rows = {"+++-++--", "++++++--", "+++-+++-", "+++-++-+",
                                                  "+++++++-", "++++++-+", "+++-++++"};
    return rows;
}

inline const std::vector<std::string>& table6_columns() {
    static const std::vector<std::string> cols = {"A3", "B1", "B2", "B3", "B4", "B5", "B6", "B8"};
    return cols;
}

namespace lab_detail {
inline std::string render_signs(const std::vector<std::string>& names, const std::string& signs) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? " " : "") + std::string(1, signs[i]) + names[i];
    return out;
}

// Projects a printed Table 6 row onto `axioms`, reading column labels from
// `columns`. Columns naming an axiom outside `axioms` are dropped.
inline std::string project_row(const std::string& row, const std::vector<std::string>& columns,
                               const std::vector<std::string>& axioms) {
    std::string out(axioms.size(), '+');
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto it = std::find(axioms.begin(), axioms.end(), columns[c]);
        if (it != axioms.end())
            out[static_cast<std::size_t>(it - axioms.begin())] = row[c];
    }
    return out;
}

inline Table6Diff diff_rows(std::string reading, const std::vector<std::string>& table,
                            const std::vector<std::string>& computed, const std::vector<std::string>& axioms) {
    Table6Diff d;
    d.reading = std::move(reading);
    for (const auto& t : table) {
        if (std::find(computed.begin(), computed.end(), t) != computed.end())
            d.matched.push_back(render_signs(axioms, t));
        else
            d.only_in_table.push_back(render_signs(axioms, t));
    }
    for (const auto& c : computed)
        if (std::find(table.begin(), table.end(), c) == table.end())
            d.only_computed.push_back(render_signs(axioms, c));
    return d;
}
}  // namespace lab_detail

// `l_total_size` bounds the exhaustive L-total checks: plain enumeration up
// to size 2, finder exhaustion up to l_total_size.
inline B7PrimeReport b7prime_analysis(const SearchConfig& cfg, int l_total_size = 3) {
    cfg.validate();
    const AxiomCorpus& corpus = AxiomCorpus::standard();
    const AxiomSystem full = corpus.system("SigmaSharpPrime");
    AxiomSystem rest{"SigmaSharpPrime \\ B7'", {}};
    for (const auto& a : full.axioms)
        if (a.name != "B7'")
            rest.axioms.push_back(a);
    const Formula& b7p = corpus.axiom("B7'");

    B7PrimeReport r;
    r.axioms = rest.axiom_names();
    r.config = cfg;
    const std::size_t k = rest.axioms.size();
    const std::size_t total = std::size_t{1} << k;
    r.entries.resize(total);

    SearchConfig inner = cfg;
    inner.jobs = 1;
    // -B7' is the universal sentence "L holds everywhere"; the finder turns
    // it into unit clauses, so L is fixed before the first decision.
    parallel_for(total, cfg.jobs, [&](std::size_t i) {
        VectorOutcome& e = r.entries[i];
        e.index = static_cast<std::uint32_t>(i);
        e.signs = signs_of_index(e.index, k);
        SignedFormulaSet set = rest.with_signs(e.signs);
        set.add("B7'", b7p, Sign::Negative);
        e.label = set.describe();
        SearchOutcome o = find_model_sweep(set, inner);
        e.verdict = o.verdict;
        e.model = std::move(o.model);
        e.ladder = std::move(o.ladder);
    });

    std::vector<std::string> computed_exceptions;
    for (const auto& e : r.entries) {
        if (e.model) {
            const auto& lin = e.model->lin_table();
            r.models_are_l_total = r.models_are_l_total && std::all_of(lin.begin(), lin.end(), [](bool b) { return b; });
        }
        switch (e.verdict) {
        case Verdict::Sat:
            r.sat_vectors.push_back(e.label);
            if (e.index != 0)
                computed_exceptions.push_back(sign_string(e.signs));
            break;
        case Verdict::UnsatExhausted: r.exhausted_vectors.push_back(e.label); break;
        case Verdict::Unknown: r.unknown_vectors.push_back(e.label); break;
        }
    }

    {
        std::vector<Sign> s(k, Sign::Positive);
        s[static_cast<std::size_t>(std::find(r.axioms.begin(), r.axioms.end(), "B4") - r.axioms.begin())] =
            Sign::Negative;
        const auto& e = r.entries[index_of_signs(s)];
        r.b4_vector = e.label;
        r.b4_verdict = e.verdict;
        std::optional<int> through;
        for (const auto& sr : e.ladder) {
            if (sr.verdict != Verdict::UnsatExhausted)
                break;
            through = sr.size;
        }
        r.b4_exhausted_through = through;
    }

    for (const std::string name : {"A3", "B1", "B3", "B4"}) {
        LTotalCheck c;
        c.axiom = name;
        const Formula& f = corpus.axiom(name);
        c.enumerated_through = std::min(2, l_total_size);
        c.enumerated_true = true;
        for (int n = 1; n <= c.enumerated_through; ++n) {
            // tau ranges freely; L is the full cube.
            const int cells = n * n * n;
            std::vector<Element> tau(static_cast<std::size_t>(cells), 0);
            const std::vector<bool> lin(static_cast<std::size_t>(cells), true);
            for (;;) {
                if (!evaluate(FiniteStructure(n, tau, lin), f)) {
                    c.enumerated_true = false;
                    break;
                }
                int pos = cells;
                while (pos > 0 && ++tau[static_cast<std::size_t>(pos - 1)] == n)
                    tau[static_cast<std::size_t>(--pos)] = 0;
                if (pos == 0)
                    break;
            }
        }
        SignedFormulaSet counter;
        counter.add("B7'", b7p, Sign::Negative);
        counter.add(name, f, Sign::Negative);
        SearchConfig sc = cfg;
        sc.min_size = 1;
        sc.max_size = l_total_size;
        const SearchOutcome o = find_model_sweep(counter, sc);
        c.search_verdict = o.verdict;
        c.searched_through = l_total_size;
        r.l_total_checks.push_back(c);
    }

    r.table6_rows = table6_printed_rows();
    std::vector<std::string> printed, exchanged;
    std::vector<std::string> swapped_cols = table6_columns();
    std::swap(swapped_cols[2], swapped_cols[3]);
    for (const auto& row : r.table6_rows) {
        printed.push_back(lab_detail::project_row(row, table6_columns(), r.axioms));
        exchanged.push_back(lab_detail::project_row(row, swapped_cols, r.axioms));
    }
    r.table6.push_back(lab_detail::diff_rows("as printed", printed, computed_exceptions, r.axioms));
    r.table6.push_back(lab_detail::diff_rows("B2 and B3 columns exchanged", exchanged, computed_exceptions, r.axioms));
    return r;
}

// ---- exit codes -------------------------------------------------------------------

// 0 when every verdict is Sat, 20 when any is Unknown, 10 otherwise.
inline int exit_code_for(const std::vector<Verdict>& verdicts) {
    bool unknown = false, unsat = false;
    for (Verdict v : verdicts) {
        unknown = unknown || v == Verdict::Unknown;
        unsat = unsat || v == Verdict::UnsatExhausted;
    }
    return unknown ? 20 : unsat ? 10 : 0;
}

}  // namespace centrans
