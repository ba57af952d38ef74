#pragma once

// Reference oracle for the model finder: plain enumeration of every total
// structure of a given size, judged by the recursive evaluator. No
// propagation, no symmetry breaking.

#include <chrono>
#include <set>
#include <stdexcept>
#include <vector>

#include "corpus.hpp"
#include "finder.hpp"
#include "structure.hpp"

namespace centrans {

namespace brute_detail {

// Calls visit(M) for every structure of size n, in lexicographic order of
// (tau table, L table, constants). visit returns false to stop.
template <class Visit>
void for_each_structure(int n, bool with_constants, Visit&& visit) {
    if (n < 1 || n > 2)
        throw std::invalid_argument("brute-force enumeration is limited to sizes 1 and 2");
    const int cells = n * n * n;
    std::vector<Element> tau(static_cast<std::size_t>(cells), 0);
    std::vector<bool> lin(static_cast<std::size_t>(cells), false);
    const auto next_tau = [&] {
        for (int i = cells - 1; i >= 0; --i) {
            if (++tau[static_cast<std::size_t>(i)] < n)
                return true;
            tau[static_cast<std::size_t>(i)] = 0;
        }
        return false;
    };
    const auto next_lin = [&] {
        for (int i = cells - 1; i >= 0; --i) {
            if (!lin[static_cast<std::size_t>(i)]) {
                lin[static_cast<std::size_t>(i)] = true;
                return true;
            }
            lin[static_cast<std::size_t>(i)] = false;
        }
        return false;
    };
    do {
        do {
            if (!with_constants) {
                if (!visit(FiniteStructure(n, tau, lin)))
                    return;
                continue;
            }
            for (int c = 0; c < cells; ++c) {
                const ConstantTriple k{c / (n * n), c / n % n, c % n};
                if (!visit(FiniteStructure(n, tau, lin, k)))
                    return;
            }
        } while (next_lin());
    } while (next_tau());
}

}  // namespace brute_detail

// Sat with the first satisfying structure, or UnsatExhausted.
inline SearchOutcome brute_force_oracle(const SignedFormulaSet& set, int n) {
    const auto start = std::chrono::steady_clock::now();
    SearchOutcome out;
    SizeResult sr;
    sr.size = n;
    std::optional<FiniteStructure> found;
    brute_detail::for_each_structure(n, set.mentions_constants(), [&](FiniteStructure m) {
        ++sr.stats.decisions;
        if (satisfies_quick(m, set)) {
            found = std::move(m);
            return false;
        }
        return true;
    });
    sr.verdict = found ? Verdict::Sat : Verdict::UnsatExhausted;
    sr.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.verdict = sr.verdict;
    out.model = std::move(found);
    out.ladder.push_back(sr);
    return out;
}

// Every truth-value profile (bit i set when formulas[i] is true) realised by
// some structure of size n. A signed set over these formulas is satisfiable
// at size n iff its sign pattern is in the result.
inline std::set<std::uint32_t> brute_force_sign_profiles(const std::vector<NamedFormula>& formulas, int n) {
    if (formulas.size() > 32)
        throw std::invalid_argument("at most 32 formulas per profile");
    bool constants = false;
    for (const auto& f : formulas)
        constants = constants || mentions_constants(f.formula);
    std::set<std::uint32_t> out;
    brute_detail::for_each_structure(n, constants, [&](const FiniteStructure& m) {
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < formulas.size(); ++i)
            if (evaluate(m, formulas[i].formula))
                bits |= 1u << i;
        out.insert(bits);
        return true;
    });
    return out;
}

}  // namespace centrans
