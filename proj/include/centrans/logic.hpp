#pragma once

// Terms and formulas over the fixed signature of central translation
// structures: constants a0, a1, a2, the ternary function tau and the ternary
// relation L (plus built-in equality).

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace centrans {

// Domain elements are 0-based internally; reports and files use 1-based labels.
using Element = int;

namespace signature {
inline constexpr std::array<std::string_view, 3> constant_names{"a0", "a1", "a2"};
inline constexpr std::string_view tau_name = "tau";
inline constexpr std::string_view sigma_name = "sigma";
inline constexpr std::string_view lin_name = "L";
inline constexpr std::size_t tau_arity = 3;
inline constexpr std::size_t lin_arity = 3;

inline bool is_reserved(std::string_view id) {
    return id == tau_name || id == sigma_name || id == lin_name || id == "all" || id == "exists" ||
           id == constant_names[0] || id == constant_names[1] || id == constant_names[2];
}
}  // namespace signature

class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, Element, Tau };

    static Term variable(std::string name) {
        if (name.empty())
            throw std::invalid_argument("empty variable name");
        if (signature::is_reserved(name))
            throw std::invalid_argument("variable name '" + name + "' is reserved");
        return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), 0, {}}));
    }
    static Term constant(int index) {
        if (index < 0 || index > 2)
            throw std::invalid_argument("constant index out of range: " + std::to_string(index));
        return Term(std::make_shared<const Node>(Node{Kind::Constant, {}, index, {}}));
    }
    // Only ground instances carry domain elements.
    static Term element(centrans::Element e) {
        if (e < 0)
            throw std::invalid_argument("negative domain element");
        return Term(std::make_shared<const Node>(Node{Kind::Element, {}, e, {}}));
    }
    static Term tau(Term a, Term b, Term c) {
        return Term(std::make_shared<const Node>(
            Node{Kind::Tau, {}, 0, {std::move(a), std::move(b), std::move(c)}}));
    }

    Kind kind() const { return node_->kind; }
    bool is_variable() const { return kind() == Kind::Variable; }
    const std::string& name() const { return node_->name; }
    // Constant index (0..2) or domain element, depending on kind.
    int index() const { return node_->index; }
    const Term& arg(std::size_t i) const { return node_->args.at(i); }

    friend bool operator==(const Term& x, const Term& y) {
        if (x.node_ == y.node_)
            return true;
        if (x.kind() != y.kind())
            return false;
        switch (x.kind()) {
        case Kind::Variable: return x.name() == y.name();
        case Kind::Constant:
        case Kind::Element: return x.index() == y.index();
        case Kind::Tau:
            return x.arg(0) == y.arg(0) && x.arg(1) == y.arg(1) && x.arg(2) == y.arg(2);
        }
        return false;
    }

private:
    struct Node {
        Kind kind;
        std::string name;
        int index;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// sigma(a, b) abbreviates tau(b, a, a); it is never a term constructor of its own.
inline Term sigma_expand(const Term& a, const Term& b) { return Term::tau(b, a, a); }

class Formula {
public:
    enum class Kind : std::uint8_t { Eq, Lin, Not, And, Or, Implies, Iff, Forall, Exists };

    static Formula eq(Term a, Term b) {
        return Formula(std::make_shared<const Node>(Node{Kind::Eq, {std::move(a), std::move(b)}, {}, {}}));
    }
    static Formula lin(Term a, Term b, Term c) {
        return Formula(std::make_shared<const Node>(
            Node{Kind::Lin, {std::move(a), std::move(b), std::move(c)}, {}, {}}));
    }
    // Raw negation node; see negate() for the simplifying version.
    static Formula negation(Formula f) { return unary(Kind::Not, std::move(f)); }
    static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
    static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
    static Formula implies(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
    static Formula iff(Formula a, Formula b) { return binary(Kind::Iff, std::move(a), std::move(b)); }
    static Formula forall(std::string var, Formula body) {
        return quantifier(Kind::Forall, std::move(var), std::move(body));
    }
    static Formula exists(std::string var, Formula body) {
        return quantifier(Kind::Exists, std::move(var), std::move(body));
    }
    // Nested quantifier block, outermost variable first.
    static Formula forall(const std::vector<std::string>& vars, Formula body) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = forall(*it, std::move(body));
        return body;
    }
    static Formula exists(const std::vector<std::string>& vars, Formula body) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = exists(*it, std::move(body));
        return body;
    }
    // Without these, forall({"a", "b"}, f) would pick the std::string
    // iterator-pair constructor.
    static Formula forall(std::initializer_list<std::string> vars, Formula body) {
        return forall(std::vector<std::string>(vars), std::move(body));
    }
    static Formula exists(std::initializer_list<std::string> vars, Formula body) {
        return exists(std::vector<std::string>(vars), std::move(body));
    }

    Kind kind() const { return node_->kind; }
    bool is_atom() const { return kind() == Kind::Eq || kind() == Kind::Lin; }
    bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
    bool is_binary() const {
        return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies || kind() == Kind::Iff;
    }
    const std::vector<Term>& terms() const { return node_->terms; }
    const Term& term(std::size_t i) const { return node_->terms.at(i); }
    const Formula& child(std::size_t i) const { return node_->children.at(i); }
    std::size_t num_children() const { return node_->children.size(); }
    // Bound variable of a quantifier node.
    const std::string& var() const { return node_->var; }
    const Formula& body() const { return child(0); }

    friend bool operator==(const Formula& x, const Formula& y) {
        if (x.node_ == y.node_)
            return true;
        if (x.kind() != y.kind() || x.node_->var != y.node_->var)
            return false;
        if (x.terms().size() != y.terms().size() || x.num_children() != y.num_children())
            return false;
        for (std::size_t i = 0; i < x.terms().size(); ++i)
            if (!(x.term(i) == y.term(i)))
                return false;
        for (std::size_t i = 0; i < x.num_children(); ++i)
            if (!(x.child(i) == y.child(i)))
                return false;
        return true;
    }

private:
    struct Node {
        Kind kind;
        std::vector<Term> terms;
        std::vector<Formula> children;
        std::string var;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula unary(Kind k, Formula f) {
        return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(f)}, {}}));
    }
    static Formula binary(Kind k, Formula a, Formula b) {
        return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(a), std::move(b)}, {}}));
    }
    static Formula quantifier(Kind k, std::string var, Formula body) {
        if (var.empty() || signature::is_reserved(var))
            throw std::invalid_argument("invalid bound variable '" + var + "'");
        return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(body)}, std::move(var)}));
    }
    std::shared_ptr<const Node> node_;
};

// Logical negation. Double negations cancel and the negation is pushed through
// any quantifier prefix, so a negated universal sentence becomes existential.
inline Formula negate(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Not: return f.child(0);
    case Formula::Kind::Forall: return Formula::exists(f.var(), negate(f.body()));
    case Formula::Kind::Exists: return Formula::forall(f.var(), negate(f.body()));
    default: return Formula::negation(f);
    }
}

namespace detail {
inline void term_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::Variable: out.insert(t.name()); break;
    case Term::Kind::Tau:
        for (std::size_t i = 0; i < 3; ++i)
            term_vars(t.arg(i), out);
        break;
    default: break;
    }
}

inline void free_vars_rec(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    if (f.is_atom()) {
        std::set<std::string> vs;
        for (const auto& t : f.terms())
            term_vars(t, vs);
        for (const auto& v : vs) {
            bool is_bound = false;
            for (const auto& b : bound)
                is_bound = is_bound || b == v;
            if (!is_bound)
                out.insert(v);
        }
        return;
    }
    if (f.is_quantifier()) {
        bound.push_back(f.var());
        free_vars_rec(f.body(), bound, out);
        bound.pop_back();
        return;
    }
    for (std::size_t i = 0; i < f.num_children(); ++i)
        free_vars_rec(f.child(i), bound, out);
}

inline bool term_mentions_constant(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Constant: return true;
    case Term::Kind::Tau:
        return term_mentions_constant(t.arg(0)) || term_mentions_constant(t.arg(1)) ||
               term_mentions_constant(t.arg(2));
    default: return false;
    }
}

inline bool term_mentions_tau(const Term& t) { return t.kind() == Term::Kind::Tau; }

inline Term substitute(const Term& t, const std::string& var, const Term& value) {
    switch (t.kind()) {
    case Term::Kind::Variable: return t.name() == var ? value : t;
    case Term::Kind::Tau:
        return Term::tau(substitute(t.arg(0), var, value), substitute(t.arg(1), var, value),
                         substitute(t.arg(2), var, value));
    default: return t;
    }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    detail::free_vars_rec(f, bound, out);
    return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

inline bool mentions_constants(const Formula& f) {
    if (f.is_atom()) {
        for (const auto& t : f.terms())
            if (detail::term_mentions_constant(t))
                return true;
        return false;
    }
    for (std::size_t i = 0; i < f.num_children(); ++i)
        if (mentions_constants(f.child(i)))
            return true;
    return false;
}

inline bool mentions_lin(const Formula& f) {
    if (f.kind() == Formula::Kind::Lin)
        return true;
    if (f.is_atom())
        return false;
    for (std::size_t i = 0; i < f.num_children(); ++i)
        if (mentions_lin(f.child(i)))
            return true;
    return false;
}

inline bool mentions_tau(const Formula& f) {
    if (f.is_atom()) {
        for (const auto& t : f.terms())
            if (detail::term_mentions_tau(t))
                return true;
        return false;
    }
    for (std::size_t i = 0; i < f.num_children(); ++i)
        if (mentions_tau(f.child(i)))
            return true;
    return false;
}

inline bool is_quantifier_free(const Formula& f) {
    if (f.is_atom())
        return true;
    if (f.is_quantifier())
        return false;
    for (std::size_t i = 0; i < f.num_children(); ++i)
        if (!is_quantifier_free(f.child(i)))
            return false;
    return true;
}

// Replaces free occurrences of `var` by `value`.
inline Formula substitute(const Formula& f, const std::string& var, const Term& value) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq:
        return Formula::eq(detail::substitute(f.term(0), var, value), detail::substitute(f.term(1), var, value));
    case K::Lin:
        return Formula::lin(detail::substitute(f.term(0), var, value), detail::substitute(f.term(1), var, value),
                            detail::substitute(f.term(2), var, value));
    case K::Not: return Formula::negation(substitute(f.child(0), var, value));
    case K::And: return Formula::conj(substitute(f.child(0), var, value), substitute(f.child(1), var, value));
    case K::Or: return Formula::disj(substitute(f.child(0), var, value), substitute(f.child(1), var, value));
    case K::Implies:
        return Formula::implies(substitute(f.child(0), var, value), substitute(f.child(1), var, value));
    case K::Iff: return Formula::iff(substitute(f.child(0), var, value), substitute(f.child(1), var, value));
    case K::Forall:
        return f.var() == var ? f : Formula::forall(f.var(), substitute(f.body(), var, value));
    case K::Exists:
        return f.var() == var ? f : Formula::exists(f.var(), substitute(f.body(), var, value));
    }
    return f;
}

// A sentence split into a homogeneous quantifier prefix and a quantifier-free matrix.
struct PrenexForm {
    enum class Prefix : std::uint8_t { None, Universal, Existential };
    Prefix prefix = Prefix::None;
    std::vector<std::string> vars;
    Formula matrix;
};

class QuantifierShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Splits a prenex sentence whose leading quantifiers are all of one kind.
// Mixed prefixes and quantifiers below the prefix are rejected.
inline PrenexForm split_prefix(const Formula& f) {
    PrenexForm out{PrenexForm::Prefix::None, {}, f};
    const Formula* cur = &f;
    if (cur->is_quantifier()) {
        const auto kind = cur->kind();
        out.prefix = kind == Formula::Kind::Forall ? PrenexForm::Prefix::Universal : PrenexForm::Prefix::Existential;
        while (cur->is_quantifier()) {
            if (cur->kind() != kind)
                throw QuantifierShapeError("sentence mixes universal and existential quantifiers in its prefix");
            for (const auto& v : out.vars)
                if (v == cur->var())
                    throw QuantifierShapeError("variable '" + v + "' is bound twice in the prefix");
            out.vars.push_back(cur->var());
            cur = &cur->body();
        }
        out.matrix = *cur;
    }
    if (!is_quantifier_free(out.matrix))
        throw QuantifierShapeError("sentence is not in prenex form");
    return out;
}

// Ground instances over a domain of size n (elements 0..n-1). A universal
// sentence yields n^k instances in lexicographic order of the prefix
// variables; an existential sentence yields a single disjunction of those
// instances; a quantifier-free sentence yields itself. Constants stay symbolic.
inline std::vector<Formula> ground_instances(const Formula& f, int n) {
    if (n < 1)
        throw std::invalid_argument("domain size must be positive");
    const PrenexForm p = split_prefix(f);
    if (!is_sentence(f))
        throw std::invalid_argument("ground_instances expects a sentence");
    std::vector<Formula> instances;
    std::vector<Element> tuple(p.vars.size(), 0);
    for (;;) {
        Formula inst = p.matrix;
        for (std::size_t i = 0; i < p.vars.size(); ++i)
            inst = substitute(inst, p.vars[i], Term::element(tuple[i]));
        instances.push_back(std::move(inst));
        std::size_t pos = tuple.size();
        while (pos > 0 && ++tuple[pos - 1] == n)
            tuple[--pos] = 0;
        if (pos == 0)
            break;
    }
    if (p.prefix == PrenexForm::Prefix::Existential) {
        Formula d = instances.front();
        for (std::size_t i = 1; i < instances.size(); ++i)
            d = Formula::disj(std::move(d), instances[i]);
        return {d};
    }
    return instances;
}

}  // namespace centrans
