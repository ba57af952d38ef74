#pragma once

// Exhaustive finite model search.
//
// The decision variables are the n^3 tau cells (n values each), the n^3 L
// cells (two values) and, when some entry mentions them, the three constants.
// Universal sentences are flattened and grounded into clauses over
// "cell = value" atoms; each cell is an exactly-one group, so unit
// propagation both forces atoms and eliminates values. Existential sentences
// (negated universal axioms, B7') become witness obligations: a search node
// is abandoned as soon as every witness instance has evaluated to false.
// With the least-number heuristic on, a cell may take a fresh element e only
// if every element below e already occurs in the partial assignment.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "logic.hpp"
#include "structure.hpp"

namespace centrans {

enum class CellOrder : std::uint8_t { Lexicographic, MostConstrainedFirst };
enum class Verdict : std::uint8_t { Sat, UnsatExhausted, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::UnsatExhausted: return "unsat-exhausted";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}
inline const char* to_string(CellOrder o) {
    return o == CellOrder::Lexicographic ? "lexicographic" : "most-constrained-first";
}

struct SearchConfig {
    int min_size = 1;
    int max_size = 1;
    bool lnh = true;
    CellOrder cell_order = CellOrder::Lexicographic;
    // Budgets apply to each size searched; unset means unlimited.
    std::optional<double> time_budget_secs;
    std::optional<std::uint64_t> node_budget;
    unsigned jobs = 1;

    void validate() const {
        if (min_size < 1)
            throw std::invalid_argument("min_size must be at least 1");
        if (max_size < min_size)
            throw std::invalid_argument("max_size must not be smaller than min_size");
        if (time_budget_secs && !(*time_budget_secs > 0))
            throw std::invalid_argument("time budget must be positive");
        if (node_budget && *node_budget == 0)
            throw std::invalid_argument("node budget must be positive");
        if (jobs == 0)
            throw std::invalid_argument("jobs must be positive");
    }
};

struct SearchStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    double elapsed_ms = 0;

    SearchStats& operator+=(const SearchStats& o) {
        decisions += o.decisions;
        propagations += o.propagations;
        elapsed_ms += o.elapsed_ms;
        return *this;
    }
};

struct SizeResult {
    int size = 0;
    Verdict verdict = Verdict::Unknown;
    SearchStats stats;
};

struct SearchOutcome {
    Verdict verdict = Verdict::Unknown;
    std::optional<FiniteStructure> model;
    std::vector<SizeResult> ladder;  // one entry per size searched, ascending

    bool sat() const { return verdict == Verdict::Sat; }
    std::optional<int> model_size() const {
        return model ? std::optional<int>(model->size()) : std::nullopt;
    }
    SearchStats totals() const {
        SearchStats s;
        for (const auto& r : ladder)
            s += r.stats;
        return s;
    }
    std::vector<int> sizes_with(Verdict v) const {
        std::vector<int> out;
        for (const auto& r : ladder)
            if (r.verdict == v)
                out.push_back(r.size);
        return out;
    }
    // Largest n such that every size from the first searched through n was exhausted.
    std::optional<int> exhausted_through() const {
        std::optional<int> out;
        for (const auto& r : ladder) {
            if (r.verdict != Verdict::UnsatExhausted)
                break;
            out = r.size;
        }
        return out;
    }
};

class UnsupportedSentenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace finder_detail {

// ---- negation normal form -------------------------------------------------

struct Nnf {
    enum class Kind : std::uint8_t { Atom, And, Or };
    Kind kind = Kind::Atom;
    std::optional<Formula> atom;
    bool positive = true;
    std::vector<Nnf> children;
};

inline Nnf to_nnf(const Formula& f, bool positive) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq:
    case K::Lin: return Nnf{Nnf::Kind::Atom, f, positive, {}};
    case K::Not: return to_nnf(f.child(0), !positive);
    case K::And:
    case K::Or: {
        const bool is_and = (f.kind() == K::And) == positive;
        return Nnf{is_and ? Nnf::Kind::And : Nnf::Kind::Or,
                   std::nullopt,
                   true,
                   {to_nnf(f.child(0), positive), to_nnf(f.child(1), positive)}};
    }
    case K::Implies: {
        // p -> q  ==  ~p | q
        const bool is_and = !positive;
        return Nnf{is_and ? Nnf::Kind::And : Nnf::Kind::Or,
                   std::nullopt,
                   true,
                   {to_nnf(f.child(0), !positive), to_nnf(f.child(1), positive)}};
    }
    case K::Iff: {
        // p <-> q  ==  (~p | q) & (p | ~q);  ~(p <-> q)  ==  (p | q) & (~p | ~q)
        const Formula& p = f.child(0);
        const Formula& q = f.child(1);
        Nnf a{Nnf::Kind::Or, std::nullopt, true, {to_nnf(p, !positive), to_nnf(q, true)}};
        Nnf b{Nnf::Kind::Or, std::nullopt, true, {to_nnf(p, positive), to_nnf(q, false)}};
        return Nnf{Nnf::Kind::And, std::nullopt, true, {std::move(a), std::move(b)}};
    }
    case K::Forall:
    case K::Exists: break;
    }
    throw UnsupportedSentenceError("quantifier inside a matrix");
}

struct Literal {
    Formula atom;
    bool positive;
};
using Clause = std::vector<Literal>;

inline std::vector<Clause> to_cnf(const Nnf& f) {
    constexpr std::size_t limit = 4096;
    switch (f.kind) {
    case Nnf::Kind::Atom: return {{Literal{*f.atom, f.positive}}};
    case Nnf::Kind::And: {
        std::vector<Clause> out;
        for (const auto& c : f.children) {
            auto sub = to_cnf(c);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    case Nnf::Kind::Or: {
        std::vector<Clause> acc{{}};
        for (const auto& c : f.children) {
            auto sub = to_cnf(c);
            std::vector<Clause> next;
            for (const auto& x : acc)
                for (const auto& y : sub) {
                    Clause z = x;
                    z.insert(z.end(), y.begin(), y.end());
                    next.push_back(std::move(z));
                }
            if (next.size() > limit)
                throw UnsupportedSentenceError("matrix is too large to convert to clauses");
            acc = std::move(next);
        }
        return acc;
    }
    }
    return {};
}

// ---- flattening ------------------------------------------------------------

// A literal whose arguments are all slots (prefix variables or auxiliaries).
struct FlatLiteral {
    enum class Kind : std::uint8_t { SlotEq, Tau, Const, Lin };
    Kind kind;
    bool positive;
    // SlotEq: s[0] = s[1]. Tau: tau(s[0],s[1],s[2]) = s[3]. Const: a_{s[0]} = s[1] (s[0] is
    // the constant index, not a slot). Lin: L(s[0],s[1],s[2]).
    std::array<int, 4> s;
};

struct FlatClause {
    int num_slots = 0;
    std::vector<FlatLiteral> lits;
};

class Flattener {
public:
    explicit Flattener(const std::vector<std::string>& vars) : vars_(vars), num_slots_(static_cast<int>(vars.size())) {}

    FlatClause flatten(const Clause& clause) {
        for (const auto& lit : clause)
            literal(lit.atom, lit.positive);
        return FlatClause{num_slots_, std::move(lits_)};
    }

private:
    int var_slot(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name)
                return static_cast<int>(i);
        throw UnsupportedSentenceError("free variable '" + name + "' in matrix");
    }
    std::optional<int> memo(const Term& t) const {
        for (const auto& [term, slot] : memo_)
            if (term == t)
                return slot;
        return std::nullopt;
    }
    // Slot holding the value of `t`; non-variable terms get an auxiliary
    // slot y together with the side literal "t != y".
    int slot(const Term& t) {
        if (t.is_variable())
            return var_slot(t.name());
        if (auto m = memo(t))
            return *m;
        if (t.kind() == Term::Kind::Element)
            throw UnsupportedSentenceError("domain elements cannot appear in search sentences");
        FlatLiteral side{};
        if (t.kind() == Term::Kind::Constant) {
            const int y = num_slots_++;
            side = {FlatLiteral::Kind::Const, false, {t.index(), y, 0, 0}};
            lits_.push_back(side);
            memo_.emplace_back(t, y);
            return y;
        }
        const int a = slot(t.arg(0)), b = slot(t.arg(1)), c = slot(t.arg(2));
        const int y = num_slots_++;
        lits_.push_back({FlatLiteral::Kind::Tau, false, {a, b, c, y}});
        memo_.emplace_back(t, y);
        return y;
    }
    void literal(const Formula& atom, bool positive) {
        if (atom.kind() == Formula::Kind::Lin) {
            const int a = slot(atom.term(0)), b = slot(atom.term(1)), c = slot(atom.term(2));
            lits_.push_back({FlatLiteral::Kind::Lin, positive, {a, b, c, 0}});
            return;
        }
        const Term& l = atom.term(0);
        const Term& r = atom.term(1);
        const auto opaque = [this](const Term& t) { return !t.is_variable() && !memo(t); };
        if (!opaque(l) && !opaque(r)) {
            lits_.push_back({FlatLiteral::Kind::SlotEq, positive, {slot(l), slot(r), 0, 0}});
            return;
        }
        const Term& top = opaque(l) ? l : r;
        const Term& other = opaque(l) ? r : l;
        const int v = slot(other);
        if (auto m = memo(top)) {
            lits_.push_back({FlatLiteral::Kind::SlotEq, positive, {*m, v, 0, 0}});
            return;
        }
        if (top.kind() == Term::Kind::Constant) {
            lits_.push_back({FlatLiteral::Kind::Const, positive, {top.index(), v, 0, 0}});
            return;
        }
        const int a = slot(top.arg(0)), b = slot(top.arg(1)), c = slot(top.arg(2));
        lits_.push_back({FlatLiteral::Kind::Tau, positive, {a, b, c, v}});
    }

    const std::vector<std::string>& vars_;
    int num_slots_;
    std::vector<FlatLiteral> lits_;
    std::vector<std::pair<Term, int>> memo_;
};

// ---- existential obligations -------------------------------------------------

// Matrix of an existential sentence, compiled for three-valued evaluation
// against a partial assignment.
struct ObligationProgram {
    struct TermNode {
        enum class Kind : std::uint8_t { Slot, Const, Tau } kind;
        int a = 0, b = 0, c = 0;  // slot, constant index, or child term indices
    };
    struct Node {
        enum class Kind : std::uint8_t { Eq, Lin, And, Or } kind;
        bool positive = true;
        std::vector<int> args;  // term indices (atoms) or node indices (connectives)
    };
    std::vector<TermNode> terms;
    std::vector<Node> nodes;
    int root = 0;
    int arity = 0;
    std::size_t instances = 1;
    std::string name;
};

inline int compile_term(ObligationProgram& p, const Term& t, const std::vector<std::string>& vars) {
    using TK = ObligationProgram::TermNode::Kind;
    ObligationProgram::TermNode node{TK::Slot};
    switch (t.kind()) {
    case Term::Kind::Variable: {
        auto it = std::find(vars.begin(), vars.end(), t.name());
        if (it == vars.end())
            throw UnsupportedSentenceError("free variable '" + t.name() + "' in matrix");
        node = {TK::Slot, static_cast<int>(it - vars.begin())};
        break;
    }
    case Term::Kind::Constant: node = {TK::Const, t.index()}; break;
    case Term::Kind::Tau: {
        const int a = compile_term(p, t.arg(0), vars), b = compile_term(p, t.arg(1), vars),
                  c = compile_term(p, t.arg(2), vars);
        node = {TK::Tau, a, b, c};
        break;
    }
    case Term::Kind::Element: throw UnsupportedSentenceError("domain elements cannot appear in search sentences");
    }
    p.terms.push_back(node);
    return static_cast<int>(p.terms.size()) - 1;
}

inline int compile_nnf(ObligationProgram& p, const Nnf& f, const std::vector<std::string>& vars) {
    using NK = ObligationProgram::Node::Kind;
    ObligationProgram::Node node{NK::And, true, {}};
    if (f.kind == Nnf::Kind::Atom) {
        const Formula& a = *f.atom;
        node.kind = a.kind() == Formula::Kind::Eq ? NK::Eq : NK::Lin;
        node.positive = f.positive;
        for (const auto& t : a.terms())
            node.args.push_back(compile_term(p, t, vars));
    } else {
        node.kind = f.kind == Nnf::Kind::And ? NK::And : NK::Or;
        for (const auto& c : f.children)
            node.args.push_back(compile_nnf(p, c, vars));
    }
    p.nodes.push_back(std::move(node));
    return static_cast<int>(p.nodes.size()) - 1;
}

// ---- search problem ----------------------------------------------------------

struct CompiledProblem {
    int n = 0;
    bool use_constants = false;
    bool tau_free = false;  // no entry mentions tau
    bool lin_free = false;  // no entry mentions L
    int num_vars = 0;
    std::vector<int> domain;     // per variable
    std::vector<int> atom_base;  // per variable
    int num_atoms = 0;
    std::vector<int> atom_var;
    std::vector<int> atom_val;
    std::vector<std::array<int, 3>> var_indices;  // cell coordinates (tau and L cells)
    std::vector<int> order;                       // static (lexicographic) decision order
    bool trivially_unsat = false;
    std::vector<int> units;
    std::vector<std::vector<int>> clauses;  // literals 2*atom + negated
    std::vector<ObligationProgram> obligations;

    int cells() const { return n * n * n; }
    int tau_var(int i, int j, int k) const { return (i * n + j) * n + k; }
    int lin_var(int i, int j, int k) const { return cells() + (i * n + j) * n + k; }
    int const_var(int c) const { return 2 * cells() + c; }
    bool is_tau(int v) const { return v < cells(); }
    bool is_lin(int v) const { return v >= cells() && v < 2 * cells(); }
    bool is_const(int v) const { return v >= 2 * cells(); }
    int atom(int var, int val) const { return atom_base[static_cast<std::size_t>(var)] + val; }
};

inline void ground_clause(CompiledProblem& cp, const FlatClause& fc) {
    const int n = cp.n;
    std::vector<int> env(static_cast<std::size_t>(fc.num_slots), 0);
    std::vector<int> lits;
    for (;;) {
        lits.clear();
        bool satisfied = false;
        for (const auto& l : fc.lits) {
            int atom = -1;
            switch (l.kind) {
            case FlatLiteral::Kind::SlotEq:
                if ((env[l.s[0]] == env[l.s[1]]) == l.positive)
                    satisfied = true;
                break;
            case FlatLiteral::Kind::Tau:
                atom = cp.atom(cp.tau_var(env[l.s[0]], env[l.s[1]], env[l.s[2]]), env[l.s[3]]);
                break;
            case FlatLiteral::Kind::Const: atom = cp.atom(cp.const_var(l.s[0]), env[l.s[1]]); break;
            case FlatLiteral::Kind::Lin: atom = cp.atom(cp.lin_var(env[l.s[0]], env[l.s[1]], env[l.s[2]]), 1); break;
            }
            if (satisfied)
                break;
            if (atom >= 0)
                lits.push_back(2 * atom + (l.positive ? 0 : 1));
        }
        if (!satisfied) {
            std::sort(lits.begin(), lits.end());
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            // Complementary literals, or two distinct values denied for one cell.
            for (std::size_t i = 0; i + 1 < lits.size() && !satisfied; ++i)
                for (std::size_t j = i + 1; j < lits.size() && !satisfied; ++j) {
                    const int ai = lits[i] >> 1, aj = lits[j] >> 1;
                    if (ai == aj)
                        satisfied = true;
                    else if ((lits[i] & 1) && (lits[j] & 1) &&
                             cp.atom_var[static_cast<std::size_t>(ai)] == cp.atom_var[static_cast<std::size_t>(aj)])
                        satisfied = true;
                }
        }
        if (!satisfied) {
            if (lits.empty())
                cp.trivially_unsat = true;
            else if (lits.size() == 1)
                cp.units.push_back(lits[0]);
            else
                cp.clauses.push_back(lits);
        }
        std::size_t pos = env.size();
        while (pos > 0 && ++env[pos - 1] == n)
            env[--pos] = 0;
        if (pos == 0)
            break;
    }
}

inline CompiledProblem compile(const SignedFormulaSet& set, int n) {
    CompiledProblem cp;
    cp.n = n;
    cp.use_constants = set.mentions_constants();
    bool tau_used = false, lin_used = false;
    for (const auto& e : set.entries()) {
        tau_used = tau_used || mentions_tau(e.formula);
        lin_used = lin_used || mentions_lin(e.formula);
    }
    cp.tau_free = !tau_used;
    cp.lin_free = !lin_used;

    const int cells = n * n * n;
    cp.num_vars = 2 * cells + 3;
    cp.domain.resize(static_cast<std::size_t>(cp.num_vars));
    cp.atom_base.resize(static_cast<std::size_t>(cp.num_vars));
    cp.var_indices.resize(static_cast<std::size_t>(cp.num_vars), {0, 0, 0});
    for (int v = 0; v < cp.num_vars; ++v) {
        cp.domain[static_cast<std::size_t>(v)] = cp.is_lin(v) ? 2 : n;
        cp.atom_base[static_cast<std::size_t>(v)] = cp.num_atoms;
        for (int x = 0; x < cp.domain[static_cast<std::size_t>(v)]; ++x) {
            cp.atom_var.push_back(v);
            cp.atom_val.push_back(x);
        }
        cp.num_atoms += cp.domain[static_cast<std::size_t>(v)];
        if (!cp.is_const(v)) {
            const int c = v % cells;
            cp.var_indices[static_cast<std::size_t>(v)] = {c / (n * n), c / n % n, c % n};
        }
    }
    // Constants first: once they are fixed, clauses over a0..a2 reduce to
    // clauses over single cells instead of waiting for every L cell.
    if (cp.use_constants)
        for (int c = 0; c < 3; ++c)
            cp.order.push_back(cp.const_var(c));
    for (int v = 0; v < 2 * cells; ++v)
        cp.order.push_back(v);

    for (const auto& e : set.entries()) {
        PrenexForm p{PrenexForm::Prefix::None, {}, e.formula};
        try {
            p = split_prefix(e.effective());
        } catch (const QuantifierShapeError& err) {
            throw UnsupportedSentenceError("entry '" + e.name + "': " + err.what());
        }
        if (p.prefix == PrenexForm::Prefix::Existential) {
            ObligationProgram prog;
            prog.name = e.name;
            prog.arity = static_cast<int>(p.vars.size());
            for (int i = 0; i < prog.arity; ++i)
                prog.instances *= static_cast<std::size_t>(n);
            prog.root = compile_nnf(prog, to_nnf(p.matrix, true), p.vars);
            cp.obligations.push_back(std::move(prog));
            continue;
        }
        for (const auto& clause : to_cnf(to_nnf(p.matrix, true))) {
            Flattener fl(p.vars);
            ground_clause(cp, fl.flatten(clause));
        }
    }
    return cp;
}

// ---- engine ------------------------------------------------------------------

enum class Status : std::uint8_t { Sat, Unsat, Unknown };

struct SharedControl {
    std::atomic<std::uint64_t> decisions{0};
    std::atomic<bool> cancel{false};
    std::optional<std::uint64_t> node_budget;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

class Engine {
public:
    Engine(std::shared_ptr<const CompiledProblem> problem, bool lnh, CellOrder order)
        : p_(std::move(problem)), lnh_(lnh), order_(order) {
        const auto& p = *p_;
        atom_state_.assign(static_cast<std::size_t>(p.num_atoms), 0);
        var_value_.assign(static_cast<std::size_t>(p.num_vars), -1);
        var_remaining_.assign(p.domain.begin(), p.domain.end());
        clauses_ = p.clauses;
        watches_.assign(static_cast<std::size_t>(2 * p.num_atoms), {});
        for (std::size_t c = 0; c < clauses_.size(); ++c) {
            watches_[static_cast<std::size_t>(clauses_[c][0])].push_back(static_cast<int>(c));
            watches_[static_cast<std::size_t>(clauses_[c][1])].push_back(static_cast<int>(c));
        }
        candidate_.assign(p.obligations.size(), 0);
        order_pos_.assign(static_cast<std::size_t>(p.num_vars), -1);
        for (std::size_t i = 0; i < p.order.size(); ++i)
            order_pos_[static_cast<std::size_t>(p.order[i])] = static_cast<int>(i);
    }

    // Root propagation; false means the problem is unsatisfiable outright.
    bool initialize() {
        const auto& p = *p_;
        if (p.trivially_unsat)
            return false;
        for (int lit : p.units)
            if (!assign(lit))
                return false;
        // Symbols no entry mentions are fixed instead of searched.
        for (int v = 0; v < 2 * p.cells(); ++v)
            if ((p.is_tau(v) && p.tau_free) || (p.is_lin(v) && p.lin_free))
                if (!assign(2 * p.atom(v, 0)))
                    return false;
        return propagate() && obligations_alive();
    }

    // First decision variable and its candidate values at the current node.
    std::optional<std::pair<int, std::vector<int>>> root_branches() {
        const int var = pick_var(-1);
        if (var < 0)
            return std::nullopt;
        return std::make_pair(var, candidates(var));
    }

    bool assign_decision(int var, int value) {
        return assign(2 * p_->atom(var, value)) && propagate() && obligations_alive();
    }

    Status search(SharedControl& ctl) {
        struct Frame {
            int var;
            std::size_t values_begin, values_end, next;
            std::size_t mark;
        };
        std::vector<Frame> frames;
        std::vector<int> value_pool;
        for (;;) {
            // Consistent node: pick a variable or report a model.
            const int var = pick_var(frames.empty() ? -1 : order_pos_[static_cast<std::size_t>(frames.back().var)]);
            if (var < 0)
                return Status::Sat;
            const auto cands = candidates(var);
            Frame f{var, value_pool.size(), value_pool.size() + cands.size(), value_pool.size(), trail_.size()};
            value_pool.insert(value_pool.end(), cands.begin(), cands.end());
            frames.push_back(f);
            for (;;) {
                Frame& top = frames.back();
                if (top.next == top.values_end) {
                    undo(top.mark);
                    value_pool.resize(top.values_begin);
                    frames.pop_back();
                    if (frames.empty())
                        return Status::Unsat;
                    continue;
                }
                undo(top.mark);
                const int value = value_pool[top.next++];
                ++decisions_;
                const auto total = ctl.decisions.fetch_add(1, std::memory_order_relaxed) + 1;
                if (ctl.node_budget && total > *ctl.node_budget)
                    return Status::Unknown;
                if ((decisions_ & 255) == 0) {
                    if (ctl.cancel.load(std::memory_order_relaxed))
                        return Status::Unknown;
                    if (ctl.deadline && std::chrono::steady_clock::now() > *ctl.deadline)
                        return Status::Unknown;
                }
                if (assign(2 * p_->atom(top.var, value)) && propagate() && obligations_alive())
                    break;
            }
        }
    }

    FiniteStructure model() const {
        const auto& p = *p_;
        const int cells = p.cells();
        std::vector<Element> tau(static_cast<std::size_t>(cells));
        std::vector<bool> lin(static_cast<std::size_t>(cells));
        for (int c = 0; c < cells; ++c) {
            tau[static_cast<std::size_t>(c)] = var_value_[static_cast<std::size_t>(c)];
            lin[static_cast<std::size_t>(c)] = var_value_[static_cast<std::size_t>(cells + c)] == 1;
        }
        std::optional<ConstantTriple> constants;
        if (p.use_constants)
            constants = ConstantTriple{var_value_[static_cast<std::size_t>(p.const_var(0))],
                                       var_value_[static_cast<std::size_t>(p.const_var(1))],
                                       var_value_[static_cast<std::size_t>(p.const_var(2))]};
        return FiniteStructure(p.n, std::move(tau), std::move(lin), constants);
    }

    std::uint64_t decisions() const { return decisions_; }
    std::uint64_t propagations() const { return propagations_; }

private:
    // Atom states: 1 true, -1 false, 0 unknown.
    bool assign(int lit) {
        const int atom = lit >> 1;
        const std::int8_t want = (lit & 1) ? -1 : 1;
        std::int8_t& st = atom_state_[static_cast<std::size_t>(atom)];
        if (st != 0)
            return st == want;
        st = want;
        trail_.push_back(atom);
        ++propagations_;
        const int var = p_->atom_var[static_cast<std::size_t>(atom)];
        if (want == 1) {
            var_value_[static_cast<std::size_t>(var)] = p_->atom_val[static_cast<std::size_t>(atom)];
            touch(var);
        } else {
            --var_remaining_[static_cast<std::size_t>(var)];
        }
        return true;
    }

    void touch(int var) {
        const auto& p = *p_;
        int m = touched_max_;
        if (p.is_const(var)) {
            m = std::max(m, var_value_[static_cast<std::size_t>(var)]);
        } else {
            const auto& ix = p.var_indices[static_cast<std::size_t>(var)];
            m = std::max({m, ix[0], ix[1], ix[2]});
            if (p.is_tau(var))
                m = std::max(m, var_value_[static_cast<std::size_t>(var)]);
        }
        if (m != touched_max_) {
            touched_history_.emplace_back(trail_.size() - 1, touched_max_);
            touched_max_ = m;
        }
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int atom = trail_.back();
            trail_.pop_back();
            const int var = p_->atom_var[static_cast<std::size_t>(atom)];
            if (atom_state_[static_cast<std::size_t>(atom)] == 1)
                var_value_[static_cast<std::size_t>(var)] = -1;
            else
                ++var_remaining_[static_cast<std::size_t>(var)];
            atom_state_[static_cast<std::size_t>(atom)] = 0;
        }
        while (!touched_history_.empty() && touched_history_.back().first >= mark) {
            touched_max_ = touched_history_.back().second;
            touched_history_.pop_back();
        }
        if (qhead_ > trail_.size())
            qhead_ = trail_.size();
    }

    bool lit_false(int lit) const {
        const std::int8_t st = atom_state_[static_cast<std::size_t>(lit >> 1)];
        return (lit & 1) ? st == 1 : st == -1;
    }
    bool lit_true(int lit) const {
        const std::int8_t st = atom_state_[static_cast<std::size_t>(lit >> 1)];
        return (lit & 1) ? st == -1 : st == 1;
    }

    bool propagate() {
        const auto& p = *p_;
        while (qhead_ < trail_.size()) {
            const int atom = trail_[qhead_++];
            const int var = p.atom_var[static_cast<std::size_t>(atom)];
            const bool is_true = atom_state_[static_cast<std::size_t>(atom)] == 1;
            if (is_true) {
                const int base = p.atom_base[static_cast<std::size_t>(var)];
                for (int x = 0; x < p.domain[static_cast<std::size_t>(var)]; ++x)
                    if (base + x != atom && !assign(2 * (base + x) + 1))
                        return false;
            } else if (var_value_[static_cast<std::size_t>(var)] < 0) {
                const int rem = var_remaining_[static_cast<std::size_t>(var)];
                if (rem == 0)
                    return false;
                if (rem == 1) {
                    const int base = p.atom_base[static_cast<std::size_t>(var)];
                    for (int x = 0; x < p.domain[static_cast<std::size_t>(var)]; ++x)
                        if (atom_state_[static_cast<std::size_t>(base + x)] == 0) {
                            if (!assign(2 * (base + x)))
                                return false;
                            break;
                        }
                }
            }
            const int falsified = 2 * atom + (is_true ? 1 : 0);
            if (!visit_watches(falsified))
                return false;
        }
        return true;
    }

    bool visit_watches(int falsified) {
        auto& ws = watches_[static_cast<std::size_t>(falsified)];
        std::size_t keep = 0;
        bool ok = true;
        std::size_t i = 0;
        for (; i < ws.size(); ++i) {
            const int ci = ws[i];
            auto& cl = clauses_[static_cast<std::size_t>(ci)];
            if (cl[0] == falsified)
                std::swap(cl[0], cl[1]);
            if (lit_true(cl[0])) {
                ws[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < cl.size(); ++k)
                if (!lit_false(cl[k])) {
                    std::swap(cl[1], cl[k]);
                    watches_[static_cast<std::size_t>(cl[1])].push_back(ci);
                    moved = true;
                    break;
                }
            if (moved)
                continue;
            ws[keep++] = ci;
            if (lit_false(cl[0]) || !assign(cl[0])) {
                ok = false;
                ++i;
                break;
            }
        }
        for (; i < ws.size(); ++i)
            ws[keep++] = ws[i];
        ws.resize(keep);
        return ok;
    }

    // ---- obligations: three-valued evaluation (0 false, 1 true, 2 unknown)

    int term_value(const ObligationProgram& prog, int t, const int* env) const {
        const auto& node = prog.terms[static_cast<std::size_t>(t)];
        switch (node.kind) {
        case ObligationProgram::TermNode::Kind::Slot: return env[node.a];
        case ObligationProgram::TermNode::Kind::Const: return var_value_[static_cast<std::size_t>(p_->const_var(node.a))];
        case ObligationProgram::TermNode::Kind::Tau: {
            const int a = term_value(prog, node.a, env);
            if (a < 0)
                return -1;
            const int b = term_value(prog, node.b, env);
            if (b < 0)
                return -1;
            const int c = term_value(prog, node.c, env);
            if (c < 0)
                return -1;
            return var_value_[static_cast<std::size_t>(p_->tau_var(a, b, c))];
        }
        }
        return -1;
    }

    int node_value(const ObligationProgram& prog, int idx, const int* env) const {
        const auto& node = prog.nodes[static_cast<std::size_t>(idx)];
        using NK = ObligationProgram::Node::Kind;
        switch (node.kind) {
        case NK::Eq: {
            const int a = term_value(prog, node.args[0], env);
            const int b = term_value(prog, node.args[1], env);
            if (a < 0 || b < 0)
                return 2;
            return ((a == b) == node.positive) ? 1 : 0;
        }
        case NK::Lin: {
            std::array<int, 3> args{};
            for (int i = 0; i < 3; ++i)
                args[static_cast<std::size_t>(i)] = term_value(prog, node.args[static_cast<std::size_t>(i)], env);
            // Undecided arguments range over the whole domain; the atom is
            // still decided when every reachable L cell agrees.
            const int n = p_->n;
            const int lo0 = args[0] < 0 ? 0 : args[0], hi0 = args[0] < 0 ? n - 1 : args[0];
            const int lo1 = args[1] < 0 ? 0 : args[1], hi1 = args[1] < 0 ? n - 1 : args[1];
            const int lo2 = args[2] < 0 ? 0 : args[2], hi2 = args[2] < 0 ? n - 1 : args[2];
            int seen = -1;
            for (int a = lo0; a <= hi0; ++a)
                for (int b = lo1; b <= hi1; ++b)
                    for (int c = lo2; c <= hi2; ++c) {
                        const int v = var_value_[static_cast<std::size_t>(p_->lin_var(a, b, c))];
                        if (v < 0 || (seen >= 0 && v != seen))
                            return 2;
                        seen = v;
                    }
            return ((seen == 1) == node.positive) ? 1 : 0;
        }
        case NK::And: {
            int out = 1;
            for (int c : node.args) {
                const int v = node_value(prog, c, env);
                if (v == 0)
                    return 0;
                if (v == 2)
                    out = 2;
            }
            return out;
        }
        case NK::Or: {
            int out = 0;
            for (int c : node.args) {
                const int v = node_value(prog, c, env);
                if (v == 1)
                    return 1;
                if (v == 2)
                    out = 2;
            }
            return out;
        }
        }
        return 2;
    }

    int instance_value(const ObligationProgram& prog, std::size_t instance) const {
        std::array<int, 16> env{};
        std::size_t x = instance;
        for (int i = prog.arity - 1; i >= 0; --i) {
            env[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::size_t>(p_->n));
            x /= static_cast<std::size_t>(p_->n);
        }
        return node_value(prog, prog.root, env.data());
    }

    // False when some obligation has no instance left that could still hold.
    bool obligations_alive() {
        const auto& p = *p_;
        for (std::size_t o = 0; o < p.obligations.size(); ++o) {
            const auto& prog = p.obligations[o];
            std::size_t& cand = candidate_[o];
            if (instance_value(prog, cand) != 0)
                continue;
            bool found = false;
            for (std::size_t step = 1; step < prog.instances; ++step) {
                const std::size_t i = (cand + step) % prog.instances;
                if (instance_value(prog, i) != 0) {
                    cand = i;
                    found = true;
                    break;
                }
            }
            if (!found)
                return false;
        }
        return true;
    }

    // ---- branching

    int pick_var(int after_pos) const {
        const auto& p = *p_;
        if (order_ == CellOrder::Lexicographic) {
            for (std::size_t i = static_cast<std::size_t>(after_pos + 1); i < p.order.size(); ++i)
                if (var_value_[static_cast<std::size_t>(p.order[i])] < 0)
                    return p.order[i];
            return -1;
        }
        int best = -1, best_rem = std::numeric_limits<int>::max();
        for (int v : p.order) {
            if (p.is_const(v)) {
                if (var_value_[static_cast<std::size_t>(v)] < 0)
                    return v;
                continue;
            }
            if (var_value_[static_cast<std::size_t>(v)] < 0 && var_remaining_[static_cast<std::size_t>(v)] < best_rem) {
                best = v;
                best_rem = var_remaining_[static_cast<std::size_t>(v)];
            }
        }
        return best;
    }

    std::vector<int> candidates(int var) const {
        const auto& p = *p_;
        int bound = std::numeric_limits<int>::max();
        if (lnh_ && !p.is_lin(var)) {
            int m = touched_max_;
            if (p.is_tau(var)) {
                const auto& ix = p.var_indices[static_cast<std::size_t>(var)];
                m = std::max({m, ix[0], ix[1], ix[2]});
            }
            bound = m + 1;
        }
        std::vector<int> out;
        const int base = p.atom_base[static_cast<std::size_t>(var)];
        for (int x = 0; x < p.domain[static_cast<std::size_t>(var)] && x <= bound; ++x)
            if (atom_state_[static_cast<std::size_t>(base + x)] != -1)
                out.push_back(x);
        return out;
    }

    std::shared_ptr<const CompiledProblem> p_;
    bool lnh_;
    CellOrder order_;
    std::vector<std::int8_t> atom_state_;
    std::vector<int> var_value_;
    std::vector<int> var_remaining_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    int touched_max_ = -1;
    std::vector<std::pair<std::size_t, int>> touched_history_;
    std::vector<std::size_t> candidate_;
    std::vector<int> order_pos_;
    std::uint64_t decisions_ = 0;
    std::uint64_t propagations_ = 0;
};

}  // namespace finder_detail

// Searches for a model of `set` with exactly `size` elements.
inline SearchOutcome find_model(const SignedFormulaSet& set, int size, const SearchConfig& cfg) {
    using namespace finder_detail;
    if (size < 1)
        throw std::invalid_argument("domain size must be at least 1");
    if (size > 255)
        throw std::invalid_argument("domain size is limited to 255");
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    auto problem = std::make_shared<const CompiledProblem>(compile(set, size));
    SharedControl ctl;
    ctl.node_budget = cfg.node_budget;
    if (cfg.time_budget_secs)
        ctl.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(*cfg.time_budget_secs));

    SearchOutcome out;
    SizeResult sr;
    sr.size = size;
    Status status = Status::Unsat;
    std::optional<FiniteStructure> model;

    Engine root(problem, cfg.lnh, cfg.cell_order);
    bool alive = root.initialize();
    auto branches = alive ? root.root_branches() : std::nullopt;
    // Single-candidate cells (for instance a0 under the least-number
    // heuristic) are taken before splitting so the split has several branches.
    while (alive && cfg.jobs > 1 && branches && branches->second.size() == 1) {
        alive = root.assign_decision(branches->first, branches->second.front());
        branches = alive ? root.root_branches() : std::nullopt;
    }
    if (alive) {
        if (!branches) {
            status = Status::Sat;
            model = root.model();
        } else if (cfg.jobs <= 1 || branches->second.size() <= 1) {
            status = root.search(ctl);
            if (status == Status::Sat)
                model = root.model();
        } else {
            // One work item per value of the first undecided cell. The lowest
            // satisfiable branch wins, which is what a sequential search finds.
            const auto& [var, values] = *branches;
            std::vector<Status> results(values.size(), Status::Unknown);
            std::vector<std::optional<FiniteStructure>> models(values.size());
            std::vector<SearchStats> stats(values.size());
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> best_sat{values.size()};
            std::vector<std::unique_ptr<SharedControl>> branch_ctl;
            for (std::size_t b = 0; b < values.size(); ++b) {
                auto c = std::make_unique<SharedControl>();
                c->node_budget = ctl.node_budget;
                c->deadline = ctl.deadline;
                branch_ctl.push_back(std::move(c));
            }
            const auto worker = [&] {
                for (;;) {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= values.size())
                        return;
                    if (best_sat.load() < b) {
                        results[b] = Status::Unknown;
                        continue;
                    }
                    Engine e = root;
                    Status s = e.assign_decision(var, values[b]) ? e.search(*branch_ctl[b]) : Status::Unsat;
                    results[b] = s;
                    stats[b].decisions = e.decisions() + 1;
                    stats[b].propagations = e.propagations();
                    if (s == Status::Sat) {
                        models[b] = e.model();
                        std::size_t cur = best_sat.load();
                        while (b < cur && !best_sat.compare_exchange_weak(cur, b)) {
                        }
                        for (std::size_t h = b + 1; h < values.size(); ++h)
                            branch_ctl[h]->cancel.store(true);
                    }
                }
            };
            std::vector<std::thread> threads;
            const unsigned nthreads = std::min<unsigned>(cfg.jobs, static_cast<unsigned>(values.size()));
            for (unsigned t = 0; t < nthreads; ++t)
                threads.emplace_back(worker);
            for (auto& t : threads)
                t.join();
            status = Status::Unsat;
            for (std::size_t b = 0; b < values.size(); ++b) {
                sr.stats.decisions += stats[b].decisions;
                sr.stats.propagations += stats[b].propagations;
            }
            for (std::size_t b = 0; b < values.size(); ++b) {
                if (results[b] == Status::Sat) {
                    status = Status::Sat;
                    model = models[b];
                    break;
                }
                if (results[b] == Status::Unknown)
                    status = Status::Unknown;
            }
            if (status != Status::Sat)
                for (auto r : results)
                    if (r == Status::Unknown)
                        status = Status::Unknown;
        }
        if (cfg.jobs <= 1 || !branches || branches->second.size() <= 1) {
            sr.stats.decisions = root.decisions();
            sr.stats.propagations = root.propagations();
        }
    } else {
        sr.stats.propagations = root.propagations();
    }

    sr.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    switch (status) {
    case Status::Sat: sr.verdict = Verdict::Sat; break;
    case Status::Unsat: sr.verdict = Verdict::UnsatExhausted; break;
    case Status::Unknown: sr.verdict = Verdict::Unknown; break;
    }
    if (model && !satisfies_quick(*model, set))
        throw std::logic_error("model finder produced a structure that does not satisfy " + set.describe());
    out.verdict = sr.verdict;
    out.model = std::move(model);
    out.ladder.push_back(sr);
    return out;
}

// Sizes cfg.min_size..cfg.max_size in order; stops at the first model.
inline SearchOutcome find_model_sweep(const SignedFormulaSet& set, const SearchConfig& cfg) {
    cfg.validate();
    SearchOutcome out;
    bool unknown = false;
    for (int n = cfg.min_size; n <= cfg.max_size; ++n) {
        SearchOutcome one = find_model(set, n, cfg);
        out.ladder.push_back(one.ladder.front());
        if (one.sat()) {
            out.verdict = Verdict::Sat;
            out.model = std::move(one.model);
            return out;
        }
        unknown = unknown || one.verdict == Verdict::Unknown;
    }
    out.verdict = unknown ? Verdict::Unknown : Verdict::UnsatExhausted;
    return out;
}

}  // namespace centrans
