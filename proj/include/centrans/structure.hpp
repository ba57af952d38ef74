#pragma once

// Finite interpretations of the signature and the Tarskian evaluator.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "logic.hpp"

namespace centrans {

using ConstantTriple = std::array<Element, 3>;

class FiniteStructure {
public:
    // `tau` and `lin` are indexed lexicographically by (i, j, k), 0-based.
    FiniteStructure(int n, std::vector<Element> tau, std::vector<bool> lin,
                    std::optional<ConstantTriple> constants = std::nullopt)
        : n_(n), tau_(std::move(tau)), lin_(std::move(lin)), constants_(constants) {
        if (n_ < 1)
            throw std::invalid_argument("domain size must be at least 1");
        const auto cells = static_cast<std::size_t>(n_) * n_ * n_;
        if (tau_.size() != cells || lin_.size() != cells)
            throw std::invalid_argument("tau and L tables must have n^3 entries");
        for (Element v : tau_)
            if (v < 0 || v >= n_)
                throw std::invalid_argument("tau value out of range");
        if (constants_)
            for (Element c : *constants_)
                if (c < 0 || c >= n_)
                    throw std::invalid_argument("constant out of range");
    }

    int size() const { return n_; }
    std::size_t cell(Element i, Element j, Element k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }
    Element tau(Element i, Element j, Element k) const { return tau_[cell(i, j, k)]; }
    bool lin(Element i, Element j, Element k) const { return lin_[cell(i, j, k)]; }
    const std::vector<Element>& tau_table() const { return tau_; }
    const std::vector<bool>& lin_table() const { return lin_; }
    const std::optional<ConstantTriple>& constants() const { return constants_; }

    FiniteStructure with_constants(std::optional<ConstantTriple> c) const {
        return FiniteStructure(n_, tau_, lin_, c);
    }

    friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
        return a.n_ == b.n_ && a.tau_ == b.tau_ && a.lin_ == b.lin_ && a.constants_ == b.constants_;
    }

private:
    int n_;
    std::vector<Element> tau_;
    std::vector<bool> lin_;
    std::optional<ConstantTriple> constants_;
};

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, Element>;

namespace eval_detail {

// Innermost binding last.
using Bindings = std::vector<std::pair<const std::string*, Element>>;

inline Element eval_term(const FiniteStructure& m, const Term& t, const Bindings& env) {
    switch (t.kind()) {
    case Term::Kind::Variable:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (*it->first == t.name())
                return it->second;
        throw EvaluationError("unbound variable '" + t.name() + "'");
    case Term::Kind::Constant:
        if (!m.constants())
            throw EvaluationError("structure has no interpretation for the constants");
        return (*m.constants())[static_cast<std::size_t>(t.index())];
    case Term::Kind::Element:
        if (t.index() >= m.size())
            throw EvaluationError("domain element out of range");
        return t.index();
    case Term::Kind::Tau:
        return m.tau(eval_term(m, t.arg(0), env), eval_term(m, t.arg(1), env), eval_term(m, t.arg(2), env));
    }
    throw EvaluationError("malformed term");
}

inline bool eval(const FiniteStructure& m, const Formula& f, Bindings& env) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq: return eval_term(m, f.term(0), env) == eval_term(m, f.term(1), env);
    case K::Lin:
        return m.lin(eval_term(m, f.term(0), env), eval_term(m, f.term(1), env), eval_term(m, f.term(2), env));
    case K::Not: return !eval(m, f.child(0), env);
    case K::And: return eval(m, f.child(0), env) && eval(m, f.child(1), env);
    case K::Or: return eval(m, f.child(0), env) || eval(m, f.child(1), env);
    case K::Implies: return !eval(m, f.child(0), env) || eval(m, f.child(1), env);
    case K::Iff: return eval(m, f.child(0), env) == eval(m, f.child(1), env);
    case K::Forall:
    case K::Exists: {
        const bool universal = f.kind() == K::Forall;
        env.emplace_back(&f.var(), 0);
        bool result = universal;
        for (Element e = 0; e < m.size(); ++e) {
            env.back().second = e;
            if (eval(m, f.body(), env) != universal) {
                result = !universal;
                break;
            }
        }
        env.pop_back();
        return result;
    }
    }
    throw EvaluationError("malformed formula");
}

}  // namespace eval_detail

inline bool evaluate(const FiniteStructure& m, const Formula& f, const Assignment& env = {}) {
    eval_detail::Bindings b;
    for (const auto& [name, value] : env) {
        if (value < 0 || value >= m.size())
            throw EvaluationError("assignment for '" + name + "' is outside the domain");
        b.emplace_back(&name, value);
    }
    return eval_detail::eval(m, f, b);
}

// A tuple for the prefix variables of a sentence: it falsifies the matrix of
// an asserted universal sentence, or satisfies the matrix of an existential one.
struct ViolationWitness {
    std::string axiom;
    Sign sign = Sign::Positive;
    std::vector<std::pair<std::string, Element>> assignment;  // prefix order, 0-based

    std::string describe() const {
        std::string vars, vals;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            vars += (i ? "," : "") + assignment[i].first;
            vals += (i ? "," : "") + std::to_string(assignment[i].second + 1);
        }
        if (assignment.empty())
            return "()";
        if (assignment.size() == 1)
            return vars + " = " + vals;
        return "(" + vars + ") = (" + vals + ")";
    }
    std::vector<Element> tuple() const {
        std::vector<Element> out;
        for (const auto& [v, e] : assignment)
            out.push_back(e);
        return out;
    }
};

struct EntryVerdict {
    std::string name;
    Sign sign = Sign::Positive;
    bool sentence_true = false;  // truth of the unsigned sentence
    bool satisfied = false;      // sentence_true agrees with the sign
    // Falsifying tuple of a failing + entry, or the counterexample that a
    // satisfied - entry rests on. Absent when no tuple can exist (for
    // instance a - entry whose sentence holds at every tuple).
    std::optional<ViolationWitness> witness;
    std::string note;
};

struct SatisfactionReport {
    bool satisfied = true;
    std::vector<EntryVerdict> entries;

    const EntryVerdict* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name)
                return &e;
        return nullptr;
    }
};

// Lexicographically first tuple of the prefix variables at which the matrix
// of `f` evaluates to `matrix_value`. Quantifier-free sentences yield the
// empty tuple when their truth value matches.
inline std::optional<std::vector<Element>> find_prefix_tuple(const FiniteStructure& m, const PrenexForm& p,
                                                              bool matrix_value) {
    eval_detail::Bindings env;
    for (const auto& v : p.vars)
        env.emplace_back(&v, 0);
    for (;;) {
        if (eval_detail::eval(m, p.matrix, env) == matrix_value) {
            std::vector<Element> out;
            for (const auto& [n, e] : env)
                out.push_back(e);
            return out;
        }
        std::size_t pos = env.size();
        while (pos > 0 && ++env[pos - 1].second == m.size())
            env[--pos].second = 0;
        if (pos == 0)
            return std::nullopt;
    }
}

namespace eval_detail {
inline EntryVerdict judge(const FiniteStructure& m, const SignedFormulaSet::Entry& entry) {
    EntryVerdict v;
    v.name = entry.name;
    v.sign = entry.sign;
    std::optional<PrenexForm> p;
    try {
        p = split_prefix(entry.formula);
    } catch (const QuantifierShapeError&) {
    }
    if (!p) {
        v.sentence_true = evaluate(m, entry.formula);
        v.satisfied = v.sentence_true == (entry.sign == Sign::Positive);
        v.note = "no witness: sentence is not in homogeneous prenex form";
        return v;
    }
    // A universal sentence is false exactly when some tuple falsifies the
    // matrix; an existential one is true exactly when some tuple satisfies it.
    const bool universal = p->prefix != PrenexForm::Prefix::Existential;
    const auto tuple = find_prefix_tuple(m, *p, !universal);
    v.sentence_true = universal ? !tuple.has_value() : tuple.has_value();
    v.satisfied = v.sentence_true == (entry.sign == Sign::Positive);
    if (tuple) {
        ViolationWitness w{entry.name, entry.sign, {}};
        for (std::size_t i = 0; i < p->vars.size(); ++i)
            w.assignment.emplace_back(p->vars[i], (*tuple)[i]);
        v.witness = std::move(w);
    } else if (!v.satisfied) {
        v.note = universal ? "sentence holds at every tuple" : "no tuple satisfies the matrix";
    }
    return v;
}
}  // namespace eval_detail

inline SatisfactionReport satisfies(const FiniteStructure& m, const SignedFormulaSet& s) {
    SatisfactionReport r;
    for (const auto& e : s.entries()) {
        r.entries.push_back(eval_detail::judge(m, e));
        r.satisfied = r.satisfied && r.entries.back().satisfied;
    }
    return r;
}

// Truth value only, stopping at the first failing entry.
inline bool satisfies_quick(const FiniteStructure& m, const SignedFormulaSet& s) {
    for (const auto& e : s.entries())
        if (evaluate(m, e.formula) != (e.sign == Sign::Positive))
            return false;
    return true;
}

class NoSuchTripleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Interprets a0, a1, a2 by the lexicographically first triple whose L value
// makes B7 come out as requested: an L-false triple ("triangle") when B7 is
// to hold, an L-true triple when it is to fail.
inline FiniteStructure choose_constants(const FiniteStructure& m, Sign b7_goal) {
    const bool want_lin = b7_goal == Sign::Negative;
    for (Element i = 0; i < m.size(); ++i)
        for (Element j = 0; j < m.size(); ++j)
            for (Element k = 0; k < m.size(); ++k)
                if (m.lin(i, j, k) == want_lin)
                    return m.with_constants(ConstantTriple{i, j, k});
    throw NoSuchTripleError(want_lin ? "no triple satisfies L, so B7 cannot be falsified"
                                     : "no triangle exists, so B7 cannot be satisfied");
}

// Image of `m` under the bijection `pi` (pi[old] = new).
inline FiniteStructure permute(const FiniteStructure& m, const std::vector<Element>& pi) {
    const int n = m.size();
    if (static_cast<int>(pi.size()) != n)
        throw std::invalid_argument("permutation has the wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Element e : pi) {
        if (e < 0 || e >= n || seen[static_cast<std::size_t>(e)])
            throw std::invalid_argument("permutation is not a bijection on the domain");
        seen[static_cast<std::size_t>(e)] = true;
    }
    std::vector<Element> tau(m.tau_table().size());
    std::vector<bool> lin(m.lin_table().size());
    const auto idx = [n](Element i, Element j, Element k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            for (Element k = 0; k < n; ++k) {
                const auto dst = idx(pi[i], pi[j], pi[k]);
                tau[dst] = pi[m.tau(i, j, k)];
                lin[dst] = m.lin(i, j, k);
            }
    std::optional<ConstantTriple> c;
    if (m.constants())
        c = ConstantTriple{pi[(*m.constants())[0]], pi[(*m.constants())[1]], pi[(*m.constants())[2]]};
    return FiniteStructure(n, std::move(tau), std::move(lin), c);
}

inline std::vector<Element> inverse_permutation(const std::vector<Element>& pi) {
    std::vector<Element> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i)
        inv[static_cast<std::size_t>(pi[i])] = static_cast<Element>(i);
    return inv;
}

// ---------------------------------------------------------------------------
// Model files
//
//   domain <n>
//   constants <c0> <c1> <c2>          (optional)
//   tau <i> <j> <k> = <v>             (n^3 lines, lexicographic)
//   L+ <i>,<j>,<k> ...                (or "L+ none")
//
// All labels are 1-based.

class ModelFormatError : public std::runtime_error {
public:
    ModelFormatError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline std::string to_model_text(const FiniteStructure& m) {
    std::ostringstream out;
    const int n = m.size();
    out << "domain " << n << "\n";
    if (m.constants())
        out << "constants " << (*m.constants())[0] + 1 << ' ' << (*m.constants())[1] + 1 << ' '
            << (*m.constants())[2] + 1 << "\n";
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            for (Element k = 0; k < n; ++k)
                out << "tau " << i + 1 << ' ' << j + 1 << ' ' << k + 1 << " = " << m.tau(i, j, k) + 1 << "\n";
    out << "L+";
    bool any = false;
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            for (Element k = 0; k < n; ++k)
                if (m.lin(i, j, k)) {
                    out << ' ' << i + 1 << ',' << j + 1 << ',' << k + 1;
                    any = true;
                }
    if (!any)
        out << " none";
    out << "\n";
    return out.str();
}

namespace model_detail {
inline int parse_label(const std::string& s, int n, int line) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ModelFormatError(line, "expected a number, found '" + s + "'");
    }
    if (used != s.size())
        throw ModelFormatError(line, "expected a number, found '" + s + "'");
    if (n > 0 && (v < 1 || v > n))
        throw ModelFormatError(line, "element " + s + " is outside 1.." + std::to_string(n));
    return v;
}
}  // namespace model_detail

inline FiniteStructure parse_model_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::pair<int, std::string>> lines;
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (const auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        if (raw.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        lines.emplace_back(no, raw);
    }
    std::size_t pos = 0;
    const auto next_words = [&](int& line_no) {
        if (pos >= lines.size())
            throw ModelFormatError(lines.empty() ? 1 : lines.back().first + 1, "unexpected end of model file");
        line_no = lines[pos].first;
        std::istringstream ls(lines[pos++].second);
        std::vector<std::string> ws;
        for (std::string w; ls >> w;)
            ws.push_back(w);
        return ws;
    };
    int line = 0;
    auto ws = next_words(line);
    if (ws.size() != 2 || ws[0] != "domain")
        throw ModelFormatError(line, "expected 'domain <n>'");
    const int n = model_detail::parse_label(ws[1], 0, line);
    if (n < 1 || n > 255)
        throw ModelFormatError(line, "domain size must be between 1 and 255");
    std::optional<ConstantTriple> constants;
    ws = next_words(line);
    if (!ws.empty() && ws[0] == "constants") {
        if (ws.size() != 4)
            throw ModelFormatError(line, "expected 'constants <c0> <c1> <c2>'");
        constants = ConstantTriple{model_detail::parse_label(ws[1], n, line) - 1,
                                   model_detail::parse_label(ws[2], n, line) - 1,
                                   model_detail::parse_label(ws[3], n, line) - 1};
        ws = next_words(line);
    }
    const auto cells = static_cast<std::size_t>(n) * n * n;
    std::vector<Element> tau(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        if (c > 0)
            ws = next_words(line);
        const int i = static_cast<int>(c / (n * n)) + 1, j = static_cast<int>(c / n % n) + 1,
                  k = static_cast<int>(c % n) + 1;
        if (ws.size() != 6 || ws[0] != "tau" || ws[4] != "=")
            throw ModelFormatError(line, "expected 'tau " + std::to_string(i) + " " + std::to_string(j) + " " +
                                             std::to_string(k) + " = <v>'");
        if (model_detail::parse_label(ws[1], n, line) != i || model_detail::parse_label(ws[2], n, line) != j ||
            model_detail::parse_label(ws[3], n, line) != k)
            throw ModelFormatError(line, "tau entries must be listed in lexicographic order; expected (" +
                                             std::to_string(i) + "," + std::to_string(j) + "," +
                                             std::to_string(k) + ")");
        tau[c] = model_detail::parse_label(ws[5], n, line) - 1;
    }
    ws = next_words(line);
    if (ws.empty() || ws[0] != "L+")
        throw ModelFormatError(line, "expected 'L+' line");
    std::vector<bool> lin(cells, false);
    if (!(ws.size() == 2 && ws[1] == "none")) {
        long long last = -1;
        for (std::size_t w = 1; w < ws.size(); ++w) {
            std::vector<std::string> parts;
            std::string cur;
            for (char ch : ws[w]) {
                if (ch == ',') {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            parts.push_back(cur);
            if (parts.size() != 3)
                throw ModelFormatError(line, "expected a triple i,j,k, found '" + ws[w] + "'");
            const int i = model_detail::parse_label(parts[0], n, line) - 1;
            const int j = model_detail::parse_label(parts[1], n, line) - 1;
            const int k = model_detail::parse_label(parts[2], n, line) - 1;
            const auto c = (static_cast<long long>(i) * n + j) * n + k;
            if (c <= last)
                throw ModelFormatError(line, "L+ triples must be strictly increasing");
            last = c;
            lin[static_cast<std::size_t>(c)] = true;
        }
    }
    if (pos != lines.size())
        throw ModelFormatError(lines[pos].first, "trailing content after L+ line");
    return FiniteStructure(n, std::move(tau), std::move(lin), constants);
}

inline nlohmann::json to_model_json(const FiniteStructure& m) {
    nlohmann::json j;
    const int n = m.size();
    j["domain"] = n;
    if (m.constants())
        j["constants"] = {(*m.constants())[0] + 1, (*m.constants())[1] + 1, (*m.constants())[2] + 1};
    nlohmann::json tau = nlohmann::json::array(), lin = nlohmann::json::array();
    for (Element i = 0; i < n; ++i)
        for (Element jj = 0; jj < n; ++jj)
            for (Element k = 0; k < n; ++k) {
                tau.push_back({i + 1, jj + 1, k + 1, m.tau(i, jj, k) + 1});
                if (m.lin(i, jj, k))
                    lin.push_back({i + 1, jj + 1, k + 1});
            }
    j["tau"] = std::move(tau);
    j["L+"] = std::move(lin);
    return j;
}

inline FiniteStructure parse_model_json(const nlohmann::json& j) {
    try {
        const int n = j.at("domain").get<int>();
        if (n < 1 || n > 255)
            throw ModelFormatError(0, "domain size must be between 1 and 255");
        const auto cells = static_cast<std::size_t>(n) * n * n;
        std::vector<Element> tau(cells, -1);
        std::vector<bool> lin(cells, false);
        const auto label = [n](const nlohmann::json& v) {
            const int x = v.get<int>();
            if (x < 1 || x > n)
                throw ModelFormatError(0, "element " + std::to_string(x) + " is outside the domain");
            return x - 1;
        };
        const auto index = [n](int i, int jj, int k) { return (static_cast<std::size_t>(i) * n + jj) * n + k; };
        for (const auto& row : j.at("tau")) {
            if (row.size() != 4)
                throw ModelFormatError(0, "tau rows must be [i,j,k,v]");
            tau[index(label(row[0]), label(row[1]), label(row[2]))] = label(row[3]);
        }
        if (std::find(tau.begin(), tau.end(), -1) != tau.end())
            throw ModelFormatError(0, "tau table is not total");
        for (const auto& row : j.at("L+")) {
            if (row.size() != 3)
                throw ModelFormatError(0, "L+ rows must be [i,j,k]");
            lin[index(label(row[0]), label(row[1]), label(row[2]))] = true;
        }
        std::optional<ConstantTriple> c;
        if (j.contains("constants") && !j.at("constants").is_null()) {
            const auto& cs = j.at("constants");
            if (cs.size() != 3)
                throw ModelFormatError(0, "constants must be a triple");
            c = ConstantTriple{label(cs[0]), label(cs[1]), label(cs[2])};
        }
        return FiniteStructure(n, std::move(tau), std::move(lin), c);
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(0, std::string("malformed model JSON: ") + e.what());
    }
}

// Accepts either the text format or its JSON rendering.
inline FiniteStructure parse_model(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ModelFormatError(0, std::string("malformed model JSON: ") + e.what());
        }
        return parse_model_json(j);
    }
    return parse_model_text(text);
}

}  // namespace centrans
