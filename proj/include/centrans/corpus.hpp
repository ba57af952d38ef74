#pragma once

// The built-in axiom corpus (A3, B1..B8, B7') and the named systems built
// from it, plus the signed formula sets that satisfiability questions are
// phrased in.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logic.hpp"

namespace centrans {

enum class Sign : std::uint8_t { Positive, Negative };

inline char sign_char(Sign s) { return s == Sign::Positive ? '+' : '-'; }

struct NamedFormula {
    std::string name;
    Formula formula;
};

class UnknownNameError : public std::invalid_argument {
public:
    UnknownNameError(const std::string& kind, std::string name, std::vector<std::string> suggestions)
        : std::invalid_argument(make_message(kind, name, suggestions)),
          name_(std::move(name)),
          suggestions_(std::move(suggestions)) {}
    const std::string& name() const { return name_; }
    const std::vector<std::string>& suggestions() const { return suggestions_; }

private:
    static std::string make_message(const std::string& kind, const std::string& name,
                                    const std::vector<std::string>& suggestions) {
        std::string msg = "unknown " + kind + " '" + name + "'";
        if (!suggestions.empty()) {
            msg += " (did you mean";
            for (std::size_t i = 0; i < suggestions.size(); ++i)
                msg += (i ? ", " : " ") + suggestions[i];
            msg += "?)";
        }
        return msg;
    }
    std::string name_;
    std::vector<std::string> suggestions_;
};

namespace detail {
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const auto sub = prev[j - 1] + (std::tolower(a[i - 1]) == std::tolower(b[j - 1]) ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}
}  // namespace detail

// Closest known names, for error messages.
inline std::vector<std::string> suggest_names(const std::string& name, const std::vector<std::string>& known) {
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& k : known) {
        const auto d = detail::edit_distance(name, k);
        if (d <= std::max<std::size_t>(2, name.size() / 3))
            scored.emplace_back(d, k);
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scored.size() && i < 3; ++i)
        out.push_back(scored[i].second);
    return out;
}

// An ordered list of sentences, each asserted (+) or denied (-).
class SignedFormulaSet {
public:
    struct Entry {
        std::string name;
        Formula formula;
        Sign sign;

        // The sentence actually asserted: the formula or its negation.
        Formula effective() const { return sign == Sign::Positive ? formula : negate(formula); }
    };

    SignedFormulaSet() = default;

    SignedFormulaSet& add(std::string name, Formula f, Sign s) {
        if (contains(name))
            throw std::invalid_argument("duplicate entry '" + name + "' in signed formula set");
        if (!is_sentence(f))
            throw std::invalid_argument("entry '" + name + "' is not a sentence");
        entries_.push_back({std::move(name), std::move(f), s});
        return *this;
    }
    SignedFormulaSet& add(const NamedFormula& nf, Sign s) { return add(nf.name, nf.formula, s); }

    bool contains(const std::string& name) const { return find(name) != nullptr; }
    const Entry* find(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name)
                return &e;
        return nullptr;
    }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool mentions_constants() const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [](const Entry& e) { return centrans::mentions_constants(e.formula); });
    }

    // "+A3 +B1 -B5" style rendering.
    std::string describe() const {
        std::string out;
        for (const auto& e : entries_) {
            if (!out.empty())
                out += ' ';
            out += sign_char(e.sign);
            out += e.name;
        }
        return out.empty() ? "(empty)" : out;
    }

private:
    std::vector<Entry> entries_;
};

// A named, ordered axiom system.
struct AxiomSystem {
    std::string name;
    std::vector<NamedFormula> axioms;

    std::vector<std::string> axiom_names() const {
        std::vector<std::string> out;
        for (const auto& a : axioms)
            out.push_back(a.name);
        return out;
    }
    bool contains(const std::string& axiom) const {
        return std::any_of(axioms.begin(), axioms.end(), [&](const NamedFormula& a) { return a.name == axiom; });
    }
    const NamedFormula& axiom(const std::string& axiom_name) const {
        for (const auto& a : axioms)
            if (a.name == axiom_name)
                return a;
        throw UnknownNameError("axiom in system " + name, axiom_name, suggest_names(axiom_name, axiom_names()));
    }

    SignedFormulaSet all_positive() const {
        SignedFormulaSet s;
        for (const auto& a : axioms)
            s.add(a, Sign::Positive);
        return s;
    }

    // {+(X \ {target}), -target}: the set an independence model must satisfy.
    SignedFormulaSet independence_set(const std::string& target) const {
        axiom(target);  // throws on unknown target
        SignedFormulaSet s;
        for (const auto& a : axioms)
            s.add(a, a.name == target ? Sign::Negative : Sign::Positive);
        return s;
    }

    // Signs follow axiom order; `signs.size()` must equal the system size.
    SignedFormulaSet with_signs(const std::vector<Sign>& signs) const {
        if (signs.size() != axioms.size())
            throw std::invalid_argument("sign vector length does not match system " + name);
        SignedFormulaSet s;
        for (std::size_t i = 0; i < axioms.size(); ++i)
            s.add(axioms[i], signs[i]);
        return s;
    }
};

class AxiomCorpus {
public:
    static const AxiomCorpus& standard() {
        static const AxiomCorpus corpus = build();
        return corpus;
    }

    const Formula& axiom(const std::string& name) const {
        const auto it = axioms_.find(canonical(name));
        if (it == axioms_.end())
            throw UnknownNameError("axiom", name, suggest_names(name, axiom_names()));
        return it->second;
    }
    bool has_axiom(const std::string& name) const { return axioms_.count(canonical(name)) != 0; }

    // Names in their canonical presentation order.
    const std::vector<std::string>& axiom_names() const { return axiom_order_; }
    const std::vector<std::string>& system_names() const { return system_order_; }

    AxiomSystem system(const std::string& name) const {
        const auto it = systems_.find(name);
        if (it == systems_.end())
            throw UnknownNameError("system", name, suggest_names(name, system_order_));
        AxiomSystem s{name, {}};
        for (const auto& a : it->second)
            s.axioms.push_back({a, axiom(a)});
        return s;
    }
    bool has_system(const std::string& name) const { return systems_.count(name) != 0; }

    // "B7prime" is accepted as an ASCII spelling of B7'.
    static std::string canonical(const std::string& name) {
        if (name == "B7prime" || name == "corpus.B7prime")
            return name.substr(0, name.size() - 5) + "'";
        return name;
    }

private:
    AxiomCorpus() = default;

    static AxiomCorpus build() {
        using F = Formula;
        const auto v = [](const char* n) { return Term::variable(n); };
        const auto tau = [](Term x, Term y, Term z) { return Term::tau(std::move(x), std::move(y), std::move(z)); };
        const Term a = v("a"), b = v("b"), c = v("c"), d = v("d"), x = v("x");

        AxiomCorpus k;
        const auto def = [&k](const std::string& name, Formula f) {
            k.axioms_.emplace(name, std::move(f));
            k.axiom_order_.push_back(name);
        };

        // a != b & L(a,b,c) & L(a,b,d) -> L(a,c,d)
        def("A3", F::forall({"a", "b", "c", "d"},
                            F::implies(F::conj(F::conj(F::negation(F::eq(a, b)), F::lin(a, b, c)), F::lin(a, b, d)),
                                       F::lin(a, c, d))));
        def("B1", F::forall({"a", "b", "c"}, F::implies(F::lin(a, b, c), F::lin(b, a, c))));
        def("B2", F::forall({"a", "b", "c"}, F::eq(tau(a, b, c), tau(a, c, b))));
        def("B3", F::forall({"a", "b"}, F::lin(a, b, sigma_expand(a, b))));
        def("B4", F::forall({"a", "b", "c", "x"},
                            F::implies(F::lin(a, b, c), F::lin(x, tau(a, b, x), tau(a, c, x)))));
        def("B5", F::forall({"a", "b", "x"}, F::implies(F::eq(tau(a, b, x), x), F::eq(a, b))));
        // Translation composition: shifting a to b agrees with shifting c to
        // the image of c. This is the reading under which the published
        // independence tables are models; see B6printed for the literal one.
        def("B6", F::forall({"a", "b", "c", "x"}, F::eq(tau(a, b, x), tau(c, tau(a, b, c), x))));
        def("B7", F::negation(F::lin(Term::constant(0), Term::constant(1), Term::constant(2))));
        def("B8", F::forall({"a", "b"}, F::implies(F::eq(sigma_expand(a, b), b), F::eq(a, b))));
        def("B7'", F::exists({"a", "b", "c"}, F::negation(F::lin(a, b, c))));
        def("B6printed", F::forall({"a", "b", "c", "x"}, F::eq(tau(a, b, x), tau(c, tau(a, b, x), x))));

        const auto sys = [&k](const std::string& name, std::vector<std::string> members) {
            k.systems_.emplace(name, std::move(members));
            k.system_order_.push_back(name);
        };
        sys("Sigma", {"A3", "B1", "B2", "B3", "B4", "B5", "B6", "B7"});
        sys("SigmaF", {"A3", "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8"});
        sys("SigmaSharp", {"A3", "B1", "B2", "B3", "B4", "B6", "B7", "B8"});
        sys("SigmaSharpPrime", {"A3", "B1", "B2", "B3", "B4", "B6", "B7'", "B8"});
        return k;
    }

    std::map<std::string, Formula> axioms_;
    std::vector<std::string> axiom_order_;
    std::map<std::string, std::vector<std::string>> systems_;
    std::vector<std::string> system_order_;
};

}  // namespace centrans
