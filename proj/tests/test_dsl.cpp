#include <gtest/gtest.h>

#include <centrans/centrans.hpp>

using namespace centrans;
using F = Formula;

namespace {

Term v(const char* n) { return Term::variable(n); }
const Formula& ax(const std::string& name) { return AxiomCorpus::standard().axiom(name); }

template <class E>
E expect_error(const std::string& text) {
    try {
        parse_formula(text);
    } catch (const E& e) {
        return e;
    } catch (const std::exception& e) {
        ADD_FAILURE() << "wrong exception for '" << text << "': " << e.what();
        throw;
    }
    ADD_FAILURE() << "no exception for '" << text << "'";
    throw std::logic_error("unreachable");
}

}  // namespace

TEST(ParseFormula, B5) {
    EXPECT_EQ(parse_formula("all a b x. tau(a,b,x) = x -> a = b"), ax("B5"));
}

TEST(ParseFormula, SigmaExpandsWhileParsing) {
    EXPECT_EQ(parse_formula("all a b. sigma(a,b) = b -> a = b"), ax("B8"));
    EXPECT_EQ(parse_formula("all a b. L(a, b, sigma(a, b))"), ax("B3"));
}

TEST(ParseFormula, B7AndB7Prime) {
    EXPECT_EQ(parse_formula("~L(a0,a1,a2)"), ax("B7"));
    EXPECT_EQ(parse_formula("exists a b c. ~L(a,b,c)"), ax("B7'"));
}

TEST(ParseFormula, Reflexivity) {
    const Formula f = parse_formula("all a. a = a");
    EXPECT_EQ(f, F::forall("a", F::eq(v("a"), v("a"))));
}

TEST(ParseFormula, EveryCorpusAxiomRoundTrips) {
    for (const auto& name : AxiomCorpus::standard().axiom_names())
        EXPECT_EQ(parse_formula(render(ax(name))), ax(name)) << name;
}

TEST(ParseFormula, Precedence) {
    const Term a = v("a"), b = v("b");
    const Formula p = F::eq(a, a), q = F::eq(a, b), r = F::eq(b, b);
    const auto wrap = [](Formula f) { return F::forall({"a", "b"}, std::move(f)); };
    EXPECT_EQ(parse_formula("all a b. a = a & a = b | b = b"), wrap(F::disj(F::conj(p, q), r)));
    EXPECT_EQ(parse_formula("all a b. a = a -> a = b -> b = b"), wrap(F::implies(p, F::implies(q, r))));
    EXPECT_EQ(parse_formula("all a b. a = a | a = b -> b = b"), wrap(F::implies(F::disj(p, q), r)));
    EXPECT_EQ(parse_formula("all a b. ~a = a & a = b"), wrap(F::conj(F::negation(p), q)));
    EXPECT_EQ(parse_formula("all a b. a = a <-> a = b & b = b"), wrap(F::iff(p, F::conj(q, r))));
}

TEST(ParseFormula, CommentsAndWhitespace) {
    EXPECT_EQ(parse_formula("  all a.   a=a   # trailing\n"), parse_formula("all a. a = a"));
}

TEST(Render, CanonicalForms) {
    EXPECT_EQ(render(ax("B1")), "all a b c. (L(a,b,c) -> L(b,a,c))");
    EXPECT_EQ(render(ax("B6printed")), "all a b c x. (tau(a,b,x) = tau(c,tau(a,b,x),x))");
    EXPECT_EQ(render(ax("B7")), "~L(a0,a1,a2)");
}

TEST(ParseErrors, UnboundVariable) {
    const auto e = expect_error<UnknownIdentifierError>("all a. a = b");
    EXPECT_EQ(e.reason(), UnknownIdentifierError::Reason::UnboundVariable);
    EXPECT_EQ(e.identifier(), "b");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 12);
}

TEST(ParseErrors, UnknownConstantAndFunction) {
    EXPECT_EQ(expect_error<UnknownIdentifierError>("L(a0,a1,a3)").reason(),
              UnknownIdentifierError::Reason::UnknownConstant);
    EXPECT_EQ(expect_error<UnknownIdentifierError>("all a. f(a) = a").reason(),
              UnknownIdentifierError::Reason::UnknownFunction);
}

TEST(ParseErrors, SyntaxReportsExpectedTokens) {
    const auto e = expect_error<ParseError>("all a. L(a,a)");
    EXPECT_FALSE(e.expected().empty());
    expect_error<ParseError>("all a. a = a)");
    expect_error<ParseError>("all . a = a");
    expect_error<ParseError>("");
    expect_error<ParseError>("all a. tau(a,a) = a");
}

TEST(ParseErrors, FreeVariablesOnRequest) {
    ParseOptions o;
    o.allow_free_variables = true;
    const Formula f = parse_formula("L(a,b,c)", o);
    EXPECT_EQ(free_vars(f), (std::set<std::string>{"a", "b", "c"}));
}

TEST(ProblemFile, IndependenceTask) {
    const ProblemFile pf = parse_problem("use corpus\nindependence B2 in SigmaSharp max-size 3\n");
    ASSERT_EQ(pf.tasks().size(), 1u);
    const auto& t = std::get<IndependenceTask>(pf.tasks()[0].task);
    EXPECT_EQ(t.target, "B2");
    EXPECT_EQ(t.system, "SigmaSharp");
    EXPECT_EQ(t.min_size, 1);
    EXPECT_EQ(t.max_size, 3);
    EXPECT_EQ(pf.tasks()[0].line, 2);
}

TEST(ProblemFile, UndefinedNameIsRejectedWithLine) {
    try {
        parse_problem("use corpus\n\nfind-model +A3 -B9\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("B9"), std::string::npos);
    }
}

TEST(ProblemFile, QualifiedCorpusNamesWithoutUse) {
    const ProblemFile pf = parse_problem("system S = corpus.SigmaSharp\nindependence corpus.B2 in S\n");
    EXPECT_FALSE(pf.uses_corpus());
    EXPECT_FALSE(pf.has_axiom("B2"));
    const AxiomSystem s = pf.system("S");
    EXPECT_EQ(s.axiom_names(), AxiomCorpus::standard().system("SigmaSharp").axiom_names());
    EXPECT_EQ(s.axiom("B4").formula, ax("B4"));
    EXPECT_EQ(std::get<IndependenceTask>(pf.tasks()[0].task).target, "B2");
}

TEST(ProblemFile, SystemAliasOfCorpus) {
    const ProblemFile pf = parse_problem("use corpus\nsystem SigmaSharp = corpus.SigmaSharp\n");
    EXPECT_EQ(pf.system("SigmaSharp").axiom_names(), AxiomCorpus::standard().system("SigmaSharp").axiom_names());
}

TEST(ProblemFile, LocalAxiomsAndSystems) {
    const std::string text =
        "# a small theory\n"
        "axiom Refl: all a. a = a\n"
        "axiom Sym: all a b. L(a,b,a) -> L(b,a,b)\n"
        "system T = Refl Sym\n"
        "find-model T -Sym max-size 2\n"
        "complete-independence T min-size 1 max-size 2\n";
    const ProblemFile pf = parse_problem(text);
    EXPECT_EQ(pf.declared_axioms(), (std::vector<std::string>{"Refl", "Sym"}));
    EXPECT_EQ(pf.declared_systems(), (std::vector<std::string>{"T"}));
    ASSERT_EQ(pf.tasks().size(), 2u);
    const auto& fm = std::get<FindModelTask>(pf.tasks()[0].task);
    ASSERT_EQ(fm.entries.size(), 2u);
    EXPECT_EQ(fm.entries[1].sign, Sign::Negative);
    EXPECT_EQ(fm.max_size, 2);
    const auto& ci = std::get<CompleteIndependenceTask>(pf.tasks()[1].task);
    EXPECT_EQ(ci.system, "T");
    EXPECT_EQ(pf.signed_set(fm.entries).describe(), "+Refl -Sym");
    const SignedFormulaSet s = pf.signed_set({{"Refl", Sign::Positive}, {"Sym", Sign::Negative}});
    EXPECT_EQ(s.describe(), "+Refl -Sym");
}

TEST(ProblemFile, LocalAxiomShadowsCorpusName) {
    const ProblemFile pf = parse_problem("use corpus\naxiom B2: all a. a = a\nsystem S = corpus.SigmaSharp\n");
    EXPECT_EQ(pf.axiom("B2"), parse_formula("all a. a = a"));
    EXPECT_EQ(pf.system("S").axiom("B2").formula, ax("B2"));
}

TEST(ProblemFile, Errors) {
    EXPECT_THROW(parse_problem("use everything\n"), ParseError);
    EXPECT_THROW(parse_problem("axiom X all a. a = a\n"), ParseError);
    EXPECT_THROW(parse_problem("axiom X: all a. a = a\naxiom X: all a. a = a\n"), ParseError);
    EXPECT_THROW(parse_problem("axiom corpus.X: all a. a = a\n"), ParseError);
    EXPECT_THROW(parse_problem("axiom X: all a. a = b\n"), ParseError);
    EXPECT_THROW(parse_problem("use corpus\nindependence B5 in SigmaSharp\n"), ParseError);
    EXPECT_THROW(parse_problem("use corpus\nindependence B2 in SigmaSharp min-size 4 max-size 3\n"), ParseError);
    EXPECT_THROW(parse_problem("use corpus\nsystem S = A3 A3\n"), ParseError);
    EXPECT_THROW(parse_problem("use corpus\nsystem S = A3 corpus.A3\n"), ParseError);
    EXPECT_THROW(parse_problem("frobnicate\n"), ParseError);
    EXPECT_THROW(parse_problem("find-model\n"), ParseError);
}

TEST(ProblemFile, PrimeAliasAndSignOverride) {
    const ProblemFile pf = parse_problem("use corpus\nfind-model SigmaSharpPrime -B7prime +corpus.B7prime -B3\n");
    const auto& t = std::get<FindModelTask>(pf.tasks()[0].task);
    EXPECT_EQ(pf.signed_set(t.entries).describe(), "+A3 +B1 +B2 -B3 +B4 +B6 +B7' +B8");
    const ProblemFile q = parse_problem("independence corpus.B7prime in corpus.SigmaSharpPrime\n");
    EXPECT_EQ(std::get<IndependenceTask>(q.tasks()[0].task).target, "B7'");
}

TEST(ProblemFile, CorpusScopeKnowsEverything) {
    const ProblemFile& pf = corpus_scope();
    EXPECT_TRUE(pf.has_axiom("B7'"));
    EXPECT_TRUE(pf.has_system("SigmaSharpPrime"));
    EXPECT_TRUE(pf.has_axiom("corpus.B6printed"));
}
