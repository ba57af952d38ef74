#pragma once

// Line-oriented text format for formulas and problem files.
//
//   formula := ("all" | "exists") VAR+ "." formula | iff
//   iff     := impl ("<->" impl)*
//   impl    := or ("->" impl)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | quantified | atom
//   atom    := "L" "(" term "," term "," term ")" | term "=" term | "(" formula ")"
//   term    := VAR | a0 | a1 | a2 | tau(term, term, term) | sigma(term, term)
//
// `sigma(a,b)` is expanded to `tau(b,a,a)` while parsing. `#` starts a comment.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "corpus.hpp"
#include "logic.hpp"

namespace centrans {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string message, std::vector<std::string> expected = {})
        : std::runtime_error(format(line, column, message, expected)),
          line_(line),
          column_(column),
          message_(std::move(message)),
          expected_(std::move(expected)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(int line, int column, const std::string& message,
                              const std::vector<std::string>& expected) {
        std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i)
                    out += i + 1 == expected.size() ? " or " : ", ";
                out += expected[i];
            }
            out += ")";
        }
        return out;
    }
    int line_;
    int column_;
    std::string message_;
    std::vector<std::string> expected_;
};

// Unknown identifiers get their own error type so callers can tell a
// misspelled constant or function symbol from an unbound variable.
class UnknownIdentifierError : public ParseError {
public:
    enum class Reason : std::uint8_t { UnboundVariable, UnknownConstant, UnknownFunction };
    UnknownIdentifierError(int line, int column, Reason reason, std::string identifier, std::string message)
        : ParseError(line, column, std::move(message)), reason_(reason), identifier_(std::move(identifier)) {}
    Reason reason() const { return reason_; }
    const std::string& identifier() const { return identifier_; }

private:
    Reason reason_;
    std::string identifier_;
};

struct ParseOptions {
    // Off by default: problem files only contain sentences.
    bool allow_free_variables = false;
    int first_line = 1;
    int first_column = 1;
};

namespace dsl_detail {

struct Token {
    enum class Kind : std::uint8_t { Ident, LParen, RParen, Comma, Dot, Equals, Not, And, Or, Implies, Iff, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

inline std::string describe(Token::Kind k) {
    switch (k) {
    case Token::Kind::Ident: return "identifier";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::Equals: return "'='";
    case Token::Kind::Not: return "'~'";
    case Token::Kind::And: return "'&'";
    case Token::Kind::Or: return "'|'";
    case Token::Kind::Implies: return "'->'";
    case Token::Kind::Iff: return "'<->'";
    case Token::Kind::End: return "end of input";
    }
    return "?";
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view text, int line, int column) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const int l = line, col = column;
        const auto single = [&](Token::Kind k) {
            out.push_back({k, std::string(1, c), l, col});
            advance(1);
        };
        switch (c) {
        case '(': single(Token::Kind::LParen); continue;
        case ')': single(Token::Kind::RParen); continue;
        case ',': single(Token::Kind::Comma); continue;
        case '.': single(Token::Kind::Dot); continue;
        case '=': single(Token::Kind::Equals); continue;
        case '~': single(Token::Kind::Not); continue;
        case '&': single(Token::Kind::And); continue;
        case '|': single(Token::Kind::Or); continue;
        default: break;
        }
        if (text.substr(i, 2) == "->") {
            out.push_back({Token::Kind::Implies, "->", l, col});
            advance(2);
            continue;
        }
        if (text.substr(i, 3) == "<->") {
            out.push_back({Token::Kind::Iff, "<->", l, col});
            advance(3);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), l, col});
            advance(j - i);
            continue;
        }
        throw ParseError(l, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", line, column});
    return out;
}

class FormulaParser {
public:
    FormulaParser(std::vector<Token> tokens, const ParseOptions& options)
        : tokens_(std::move(tokens)), options_(options) {}

    Formula parse_all() {
        Formula f = formula();
        if (peek().kind != Token::Kind::End)
            fail_expected({"end of input", "'&'", "'|'", "'->'", "'<->'"});
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }
    bool at(Token::Kind k) const { return peek().kind == k; }
    bool at_ident(std::string_view s) const { return at(Token::Kind::Ident) && peek().text == s; }

    [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
        const Token& t = peek();
        const std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.column, "unexpected " + found, std::move(expected));
    }

    const Token& expect(Token::Kind k) {
        if (!at(k))
            fail_expected({describe(k)});
        return take();
    }

    Formula formula() {
        if (at_ident("all") || at_ident("exists"))
            return quantified();
        return iff();
    }

    Formula quantified() {
        const bool universal = take().text == "all";
        std::vector<std::string> vars;
        while (at(Token::Kind::Ident) && peek().text != "all" && peek().text != "exists") {
            const Token& t = take();
            if (signature::is_reserved(t.text))
                throw ParseError(t.line, t.column, "'" + t.text + "' is reserved and cannot be bound");
            vars.push_back(t.text);
        }
        if (vars.empty())
            fail_expected({"variable"});
        expect(Token::Kind::Dot);
        for (const auto& v : vars)
            bound_.push_back(v);
        Formula body = formula();
        bound_.resize(bound_.size() - vars.size());
        return universal ? Formula::forall(vars, std::move(body)) : Formula::exists(vars, std::move(body));
    }

    Formula iff() {
        Formula f = impl();
        while (at(Token::Kind::Iff)) {
            take();
            f = Formula::iff(std::move(f), impl());
        }
        return f;
    }

    Formula impl() {
        Formula f = disj();
        if (at(Token::Kind::Implies)) {
            take();
            return Formula::implies(std::move(f), impl_rhs());
        }
        return f;
    }
    Formula impl_rhs() {
        if (at_ident("all") || at_ident("exists"))
            return quantified();
        return impl();
    }

    Formula disj() {
        Formula f = conj();
        while (at(Token::Kind::Or)) {
            take();
            f = Formula::disj(std::move(f), conj());
        }
        return f;
    }

    Formula conj() {
        Formula f = unary();
        while (at(Token::Kind::And)) {
            take();
            f = Formula::conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        if (at(Token::Kind::Not)) {
            take();
            return Formula::negation(unary());
        }
        if (at_ident("all") || at_ident("exists"))
            return quantified();
        return atom();
    }

    Formula atom() {
        if (at(Token::Kind::LParen)) {
            take();
            Formula f = formula();
            expect(Token::Kind::RParen);
            return f;
        }
        if (at_ident(signature::lin_name)) {
            take();
            expect(Token::Kind::LParen);
            Term a = term();
            expect(Token::Kind::Comma);
            Term b = term();
            expect(Token::Kind::Comma);
            Term c = term();
            expect(Token::Kind::RParen);
            return Formula::lin(std::move(a), std::move(b), std::move(c));
        }
        if (!at(Token::Kind::Ident))
            fail_expected({"'('", "'~'", "'L'", "'all'", "'exists'", "term"});
        Term lhs = term();
        if (!at(Token::Kind::Equals))
            fail_expected({"'='"});
        take();
        Term rhs = term();
        return Formula::eq(std::move(lhs), std::move(rhs));
    }

    Term term() {
        if (!at(Token::Kind::Ident))
            fail_expected({"variable", "a0", "a1", "a2", "'tau'", "'sigma'"});
        const Token t = take();
        if (t.text == signature::tau_name) {
            expect(Token::Kind::LParen);
            Term a = term();
            expect(Token::Kind::Comma);
            Term b = term();
            expect(Token::Kind::Comma);
            Term c = term();
            expect(Token::Kind::RParen);
            return Term::tau(std::move(a), std::move(b), std::move(c));
        }
        if (t.text == signature::sigma_name) {
            expect(Token::Kind::LParen);
            Term a = term();
            expect(Token::Kind::Comma);
            Term b = term();
            expect(Token::Kind::RParen);
            return sigma_expand(a, b);
        }
        for (int i = 0; i < 3; ++i)
            if (t.text == signature::constant_names[static_cast<std::size_t>(i)])
                return Term::constant(i);
        if (t.text == signature::lin_name)
            throw ParseError(t.line, t.column, "'L' is a relation symbol and cannot be used as a term");
        if (at(Token::Kind::LParen)) {
            std::string hint;
            const auto s = suggest_names(t.text, {"tau", "sigma", "L"});
            if (!s.empty())
                hint = " (did you mean " + s.front() + "?)";
            throw UnknownIdentifierError(t.line, t.column, UnknownIdentifierError::Reason::UnknownFunction, t.text,
                                         "unknown function symbol '" + t.text + "'" + hint);
        }
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
            if (*it == t.text)
                return Term::variable(t.text);
        if (looks_like_constant(t.text))
            throw UnknownIdentifierError(t.line, t.column, UnknownIdentifierError::Reason::UnknownConstant, t.text,
                                         "unknown constant '" + t.text + "' (constants are a0, a1, a2)");
        if (!options_.allow_free_variables)
            throw UnknownIdentifierError(t.line, t.column, UnknownIdentifierError::Reason::UnboundVariable, t.text,
                                         "unbound variable '" + t.text + "'");
        return Term::variable(t.text);
    }

    // a3, a01, A0, ...: intended as a constant rather than a variable.
    static bool looks_like_constant(const std::string& s) {
        if (s.size() < 2 || (s[0] != 'a' && s[0] != 'A'))
            return false;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ParseOptions options_;
    std::vector<std::string> bound_;
};

inline int precedence(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
    }
}

inline std::string render_term(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Variable: return t.name();
    case Term::Kind::Constant: return std::string(signature::constant_names[static_cast<std::size_t>(t.index())]);
    case Term::Kind::Element: return "#" + std::to_string(t.index() + 1);
    case Term::Kind::Tau:
        return "tau(" + render_term(t.arg(0)) + "," + render_term(t.arg(1)) + "," + render_term(t.arg(2)) + ")";
    }
    return "?";
}

std::string render_formula(const Formula& f);

inline std::string parenthesize(const Formula& f) { return "(" + render_formula(f) + ")"; }

inline std::string render_formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq: return render_term(f.term(0)) + " = " + render_term(f.term(1));
    case K::Lin:
        return "L(" + render_term(f.term(0)) + "," + render_term(f.term(1)) + "," + render_term(f.term(2)) + ")";
    case K::Not: {
        const Formula& c = f.child(0);
        if (c.kind() == K::Lin || c.kind() == K::Not)
            return "~" + render_formula(c);
        return "~" + parenthesize(c);
    }
    case K::Forall:
    case K::Exists: {
        std::string out = f.kind() == K::Forall ? "all" : "exists";
        const Formula* cur = &f;
        while (cur->kind() == f.kind()) {
            out += " " + cur->var();
            cur = &cur->body();
        }
        out += ". ";
        out += cur->is_quantifier() ? render_formula(*cur) : parenthesize(*cur);
        return out;
    }
    default: break;
    }
    // Binary connectives. And, Or and Iff chain to the left; Implies to the right.
    const int p = precedence(f);
    const Formula& l = f.child(0);
    const Formula& r = f.child(1);
    const bool right_assoc = f.kind() == K::Implies;
    const bool wrap_l = l.is_quantifier() || (right_assoc ? precedence(l) <= p : precedence(l) < p);
    const bool wrap_r = r.is_quantifier() || (right_assoc ? precedence(r) < p : precedence(r) <= p);
    const char* op = f.kind() == K::And ? " & " : f.kind() == K::Or ? " | " : f.kind() == K::Implies ? " -> " : " <-> ";
    return (wrap_l ? parenthesize(l) : render_formula(l)) + op + (wrap_r ? parenthesize(r) : render_formula(r));
}

}  // namespace dsl_detail

inline Formula parse_formula(std::string_view text, const ParseOptions& options = {}) {
    auto tokens = dsl_detail::tokenize(text, options.first_line, options.first_column);
    dsl_detail::FormulaParser parser(std::move(tokens), options);
    return parser.parse_all();
}

// Canonical text; parse_formula(render(f)) == f for every formula.
inline std::string render(const Formula& f) { return dsl_detail::render_formula(f); }
inline std::string render(const Term& t) { return dsl_detail::render_term(t); }

// ---------------------------------------------------------------------------
// Problem files

struct SignedName {
    std::string name;
    Sign sign = Sign::Positive;
};

struct FindModelTask {
    std::vector<SignedName> entries;
    int min_size = 1;
    std::optional<int> max_size;
};

struct IndependenceTask {
    std::string target;
    std::string system;
    int min_size = 1;
    std::optional<int> max_size;
};

struct CompleteIndependenceTask {
    std::string system;
    int min_size = 1;
    std::optional<int> max_size;
};

using Task = std::variant<FindModelTask, IndependenceTask, CompleteIndependenceTask>;

struct TaskRecord {
    Task task;
    int line;
};

class ProblemFile {
public:
    bool uses_corpus() const { return uses_corpus_; }
    const std::vector<TaskRecord>& tasks() const { return tasks_; }

    bool has_axiom(const std::string& name) const { return axioms_.count(name) != 0; }
    bool has_system(const std::string& name) const { return systems_.count(name) != 0; }

    const Formula& axiom(const std::string& name) const {
        const auto it = axioms_.find(name);
        if (it == axioms_.end())
            throw UnknownNameError("axiom", name, suggest_names(name, known_names()));
        return it->second;
    }

    AxiomSystem system(const std::string& name) const {
        const auto it = systems_.find(name);
        if (it == systems_.end())
            throw UnknownNameError("system", name, suggest_names(name, known_names()));
        AxiomSystem s{name, {}};
        for (const auto& a : it->second)
            s.axioms.push_back({display_name(a), axiom(a)});
        return s;
    }

    // "corpus.B2" is reported as "B2".
    static std::string display_name(const std::string& name) {
        return name.rfind("corpus.", 0) == 0 ? name.substr(7) : name;
    }

    // Axioms declared in the file (not imported), in declaration order.
    const std::vector<std::string>& declared_axioms() const { return declared_axioms_; }
    const std::vector<std::string>& declared_systems() const { return declared_systems_; }

    std::vector<std::string> known_names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : axioms_)
            out.push_back(k);
        for (const auto& [k, v] : systems_)
            out.push_back(k);
        return out;
    }

    // Expands system names to their members; axiom names stand for themselves.
    // A later item overrides the sign of an earlier one with the same name.
    SignedFormulaSet signed_set(const std::vector<SignedName>& items) const {
        std::vector<std::pair<std::string, Sign>> keys;  // axiom key, sign
        const auto place = [&](const std::string& key, Sign sign) {
            for (auto& k : keys)
                if (display_name(k.first) == display_name(key)) {
                    k = {key, sign};
                    return;
                }
            keys.emplace_back(key, sign);
        };
        for (const auto& item : items) {
            if (has_axiom(item.name)) {
                place(item.name, item.sign);
            } else if (has_system(item.name)) {
                for (const auto& member : systems_.at(item.name))
                    place(member, item.sign);
            } else {
                throw UnknownNameError("axiom or system", item.name, suggest_names(item.name, known_names()));
            }
        }
        SignedFormulaSet s;
        for (const auto& [key, sign] : keys)
            s.add(display_name(key), axiom(key), sign);
        return s;
    }

private:
    friend ProblemFile parse_problem(std::string_view text);

    bool uses_corpus_ = false;
    std::map<std::string, Formula> axioms_;
    std::map<std::string, std::vector<std::string>> systems_;
    std::vector<std::string> declared_axioms_;
    std::vector<std::string> declared_systems_;
    std::vector<TaskRecord> tasks_;
};

namespace dsl_detail {

struct Line {
    std::string text;
    int number;
};

inline std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

inline bool valid_name(const std::string& s) {
    if (s.empty() || !ident_start(s[0]))
        return false;
    for (char c : s)
        if (!ident_char(c) && c != '.')
            return false;
    return true;
}

inline int parse_size(const std::string& s, int line, int column) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size() && v >= 1)
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError(line, column, "expected a positive size, found '" + s + "'");
}

}  // namespace dsl_detail

// Directives, one per line:
//   use corpus
//   axiom NAME : FORMULA
//   system NAME = NAME NAME ...        (axioms, systems, or corpus.X)
//   find-model [+|-]NAME ... [min-size N] [max-size N]
//   independence NAME in SYSTEM [min-size N] [max-size N]
//   complete-independence SYSTEM [min-size N] [max-size N]
inline ProblemFile parse_problem(std::string_view text) {
    ProblemFile pf;
    const AxiomCorpus& corpus = AxiomCorpus::standard();
    std::map<std::string, bool> local;  // names defined in this file

    // Qualified corpus names are always visible; `use corpus` adds the bare ones.
    for (const auto& a : corpus.axiom_names())
        pf.axioms_.emplace("corpus." + a, corpus.axiom(a));
    // Corpus systems always list qualified members, so a local axiom that
    // shadows a corpus name never leaks into them.
    const auto qualified_members = [&](const std::string& s) {
        std::vector<std::string> out;
        for (const auto& a : corpus.system(s).axiom_names())
            out.push_back("corpus." + a);
        return out;
    };
    for (const auto& s : corpus.system_names())
        pf.systems_.emplace("corpus." + s, qualified_members(s));
    const auto import_corpus = [&] {
        pf.uses_corpus_ = true;
        for (const auto& a : corpus.axiom_names())
            pf.axioms_.emplace(a, corpus.axiom(a));
        for (const auto& s : corpus.system_names())
            pf.systems_.emplace(s, qualified_members(s));
    };

    const auto column_of = [](const std::string& line, const std::string& word) {
        const auto pos = line.find(word);
        return pos == std::string::npos ? 1 : static_cast<int>(pos) + 1;
    };

    const auto unresolved = [&](const std::string& name, int line, int column) {
        std::string msg = "unresolved reference '" + name + "'";
        const auto s = suggest_names(name, pf.known_names());
        if (!s.empty())
            msg += " (did you mean " + s.front() + "?)";
        return ParseError(line, column, msg);
    };

    // The ASCII spelling B7prime stands for B7' unless the file defines it.
    const auto alias = [&](const std::string& w) {
        if (pf.axioms_.count(w) || pf.systems_.count(w))
            return w;
        if (w == "B7prime" || w == "corpus.B7prime")
            return w.substr(0, w.size() - 5) + "'";
        return w;
    };

    const auto define = [&](const std::string& name, int line, int column) {
        if (!dsl_detail::valid_name(name))
            throw ParseError(line, column, "invalid name '" + name + "'");
        if (name.rfind("corpus.", 0) == 0)
            throw ParseError(line, column, "names starting with 'corpus.' are reserved");
        if (local.count(name))
            throw ParseError(line, column, "duplicate definition of '" + name + "'");
        local[name] = true;
        // Local definitions shadow imported corpus names of either kind.
        pf.axioms_.erase(name);
        pf.systems_.erase(name);
    };

    // Trailing `min-size N` / `max-size N` options.
    const auto parse_bounds = [&](std::vector<std::string>& ws, const std::string& raw, int line, int& min_size,
                                  std::optional<int>& max_size) {
        for (;;) {
            if (ws.size() >= 2 && (ws[ws.size() - 2] == "min-size" || ws[ws.size() - 2] == "max-size")) {
                const int v = dsl_detail::parse_size(ws.back(), line, column_of(raw, ws.back()));
                if (ws[ws.size() - 2] == "min-size")
                    min_size = v;
                else
                    max_size = v;
                ws.resize(ws.size() - 2);
            } else {
                break;
            }
        }
        if (max_size && *max_size < min_size)
            throw ParseError(line, 1, "max-size is smaller than min-size");
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string body = raw;
        // Formulas may contain '#'-free text only, so stripping comments is safe.
        if (const auto hash = body.find('#'); hash != std::string::npos)
            body.erase(hash);
        std::vector<std::string> ws = dsl_detail::words(body);
        if (ws.empty())
            continue;
        const std::string& kw = ws[0];
        if (kw == "use") {
            if (ws.size() != 2 || ws[1] != "corpus")
                throw ParseError(line_no, column_of(raw, kw), "malformed directive", {"'use corpus'"});
            import_corpus();
        } else if (kw == "axiom") {
            const auto colon = body.find(':');
            if (colon == std::string::npos)
                throw ParseError(line_no, static_cast<int>(body.size()) + 1, "malformed axiom declaration",
                                 {"':'"});
            const auto name_words = dsl_detail::words(body.substr(body.find("axiom") + 5, colon - body.find("axiom") - 5));
            if (name_words.size() != 1)
                throw ParseError(line_no, column_of(raw, "axiom") + 6, "malformed axiom declaration",
                                 {"axiom name"});
            const std::string& name = name_words[0];
            define(name, line_no, column_of(raw, name));
            ParseOptions opts;
            opts.first_line = line_no;
            opts.first_column = static_cast<int>(colon) + 2;
            Formula f = parse_formula(std::string_view(body).substr(colon + 1), opts);
            pf.axioms_.emplace(name, std::move(f));
            pf.declared_axioms_.push_back(name);
        } else if (kw == "system") {
            if (ws.size() < 3 || ws[2] != "=")
                throw ParseError(line_no, column_of(raw, kw), "malformed system declaration",
                                 {"'system NAME = members'"});
            const std::string& name = ws[1];
            std::vector<std::string> members;
            for (std::size_t i = 3; i < ws.size(); ++i) {
                const std::string m = alias(ws[i]);
                if (pf.axioms_.count(m)) {
                    members.push_back(m);
                } else if (pf.systems_.count(m)) {
                    for (const auto& x : pf.systems_.at(m))
                        members.push_back(x);
                } else {
                    throw unresolved(ws[i], line_no, column_of(raw, ws[i]));
                }
            }
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (ProblemFile::display_name(members[i]) == ProblemFile::display_name(members[j]))
                        throw ParseError(line_no, column_of(raw, members[i]),
                                         "axiom '" + ProblemFile::display_name(members[i]) +
                                             "' listed twice in system '" + name + "'");
            define(name, line_no, column_of(raw, name));
            pf.systems_.emplace(name, std::move(members));
            pf.declared_systems_.push_back(name);
        } else if (kw == "find-model") {
            FindModelTask t;
            parse_bounds(ws, raw, line_no, t.min_size, t.max_size);
            for (std::size_t i = 1; i < ws.size(); ++i) {
                SignedName sn;
                std::string w = ws[i];
                if (!w.empty() && (w[0] == '+' || w[0] == '-')) {
                    sn.sign = w[0] == '+' ? Sign::Positive : Sign::Negative;
                    w.erase(0, 1);
                }
                const std::string key = alias(w);
                if (!pf.axioms_.count(key) && !pf.systems_.count(key))
                    throw unresolved(w, line_no, column_of(raw, w));
                sn.name = key;
                t.entries.push_back(sn);
            }
            if (t.entries.empty())
                throw ParseError(line_no, static_cast<int>(raw.size()) + 1, "find-model needs at least one entry",
                                 {"axiom or system name"});
            pf.tasks_.push_back({t, line_no});
        } else if (kw == "independence") {
            IndependenceTask t;
            parse_bounds(ws, raw, line_no, t.min_size, t.max_size);
            if (ws.size() != 4 || ws[2] != "in")
                throw ParseError(line_no, column_of(raw, kw), "malformed directive",
                                 {"'independence AXIOM in SYSTEM'"});
            const std::string target = alias(ws[1]);
            if (!pf.axioms_.count(target))
                throw unresolved(ws[1], line_no, column_of(raw, ws[1]));
            if (!pf.systems_.count(ws[3]))
                throw unresolved(ws[3], line_no, column_of(raw, ws[3]));
            const auto& members = pf.systems_.at(ws[3]);
            if (std::none_of(members.begin(), members.end(), [&](const std::string& m) {
                    return ProblemFile::display_name(m) == ProblemFile::display_name(target);
                }))
                throw ParseError(line_no, column_of(raw, ws[1]),
                                 "axiom '" + ws[1] + "' is not a member of system '" + ws[3] + "'");
            t.target = ProblemFile::display_name(target);
            t.system = ws[3];
            pf.tasks_.push_back({t, line_no});
        } else if (kw == "complete-independence") {
            CompleteIndependenceTask t;
            parse_bounds(ws, raw, line_no, t.min_size, t.max_size);
            if (ws.size() != 2)
                throw ParseError(line_no, column_of(raw, kw), "malformed directive",
                                 {"'complete-independence SYSTEM'"});
            if (!pf.systems_.count(ws[1]))
                throw unresolved(ws[1], line_no, column_of(raw, ws[1]));
            t.system = ws[1];
            pf.tasks_.push_back({t, line_no});
        } else {
            throw ParseError(line_no, column_of(raw, kw), "unknown directive '" + kw + "'",
                             {"'use'", "'axiom'", "'system'", "'find-model'", "'independence'",
                              "'complete-independence'"});
        }
    }
    return pf;
}

// Scope holding only the built-in corpus.
inline const ProblemFile& corpus_scope() {
    static const ProblemFile scope = parse_problem("use corpus\n");
    return scope;
}

}  // namespace centrans
