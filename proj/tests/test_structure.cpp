#include <gtest/gtest.h>

#include <centrans/centrans.hpp>

using namespace centrans;

namespace {

const Formula& ax(const std::string& name) { return AxiomCorpus::standard().axiom(name); }
const FiniteStructure& table(const std::string& id) { return fixture(id).structure; }

Formula matrix(const std::string& name) { return split_prefix(ax(name)).matrix; }

SignedFormulaSet independence_set(const std::string& system, const std::string& target) {
    return AxiomCorpus::standard().system(system).independence_set(target);
}

}  // namespace

TEST(Structure, RejectsMalformedTables) {
    EXPECT_THROW(FiniteStructure(0, {}, {}), std::invalid_argument);
    EXPECT_THROW(FiniteStructure(1, {0, 0}, {false}), std::invalid_argument);
    EXPECT_THROW(FiniteStructure(1, {1}, {false}), std::invalid_argument);
    EXPECT_THROW(FiniteStructure(1, {0}, {false}, ConstantTriple{0, 0, 1}), std::invalid_argument);
}

TEST(Evaluate, Table4FailsB2AtClaimedTuple) {
    const FiniteStructure& m = table("table4");
    EXPECT_FALSE(evaluate(m, matrix("B2"), {{"a", 0}, {"b", 2}, {"c", 0}}));
    EXPECT_FALSE(evaluate(m, ax("B2")));
    EXPECT_EQ(m.tau(0, 2, 0), 1);
    EXPECT_EQ(m.tau(0, 0, 2), 0);
}

TEST(Evaluate, Table2FailsA3AtClaimedTuple) {
    const FiniteStructure& m = table("table2");
    EXPECT_FALSE(evaluate(m, matrix("A3"), {{"a", 2}, {"b", 1}, {"c", 0}, {"d", 0}}));
    EXPECT_FALSE(evaluate(m, ax("A3")));
}

TEST(Evaluate, ConstantsNeedAnInterpretation) {
    EXPECT_THROW(evaluate(table("table4"), ax("B7")), EvaluationError);
    EXPECT_THROW(evaluate(table("table4"), matrix("B2"), {{"a", 3}, {"b", 0}, {"c", 0}}), EvaluationError);
}

TEST(Satisfies, Table5IsModelOfSigmaSharpWithoutB6) {
    const FiniteStructure m = choose_constants(table("table5"), Sign::Positive);
    const SatisfactionReport r = satisfies(m, independence_set("SigmaSharp", "B6"));
    EXPECT_TRUE(r.satisfied);
    const EntryVerdict* b6 = r.find("B6");
    ASSERT_NE(b6, nullptr);
    EXPECT_FALSE(b6->sentence_true);
    ASSERT_TRUE(b6->witness);
    // (a,b,c,x) = (2,2,1,2) in 1-based labels.
    EXPECT_FALSE(evaluate(m, matrix("B6"), {{"a", 1}, {"b", 1}, {"c", 0}, {"x", 1}}));
}

TEST(Satisfies, Table1NegatedB8WitnessIs12) {
    SignedFormulaSet s;
    s.add("B8", ax("B8"), Sign::Negative);
    const SatisfactionReport r = satisfies(table("table1"), s);
    EXPECT_TRUE(r.satisfied);
    ASSERT_TRUE(r.entries[0].witness);
    EXPECT_EQ(r.entries[0].witness->tuple(), (std::vector<Element>{0, 1}));
    EXPECT_EQ(r.entries[0].witness->describe(), "(a,b) = (1,2)");
}

TEST(Satisfies, ReportsViolatedPositiveEntryWithWitness) {
    SignedFormulaSet s;
    s.add("B2", ax("B2"), Sign::Positive);
    const SatisfactionReport r = satisfies(table("table4"), s);
    EXPECT_FALSE(r.satisfied);
    ASSERT_TRUE(r.entries[0].witness);
    const auto tuple = r.entries[0].witness->tuple();
    EXPECT_FALSE(evaluate(table("table4"), matrix("B2"), {{"a", tuple[0]}, {"b", tuple[1]}, {"c", tuple[2]}}));
    EXPECT_FALSE(satisfies_quick(table("table4"), s));
}

TEST(Satisfies, NegatedSentenceThatHoldsHasNoWitness) {
    SignedFormulaSet s;
    s.add("B1", ax("B1"), Sign::Negative);
    const SatisfactionReport r = satisfies(table("table4"), s);
    EXPECT_FALSE(r.satisfied);
    EXPECT_FALSE(r.entries[0].witness);
    EXPECT_FALSE(r.entries[0].note.empty());
}

TEST(ChooseConstants, FirstTriangle) {
    const FiniteStructure m = choose_constants(table("table4"), Sign::Positive);
    EXPECT_EQ(m.constants(), (ConstantTriple{0, 0, 2}));
    EXPECT_TRUE(evaluate(m, ax("B7")));
    const FiniteStructure k = choose_constants(table("table4"), Sign::Negative);
    EXPECT_EQ(k.constants(), (ConstantTriple{0, 0, 0}));
    EXPECT_FALSE(evaluate(k, ax("B7")));
}

TEST(ChooseConstants, NoTripleOnUnitStructures) {
    EXPECT_THROW(choose_constants(table("b3unit"), Sign::Negative), NoSuchTripleError);
    EXPECT_THROW(choose_constants(table("b7unit"), Sign::Positive), NoSuchTripleError);
    EXPECT_NO_THROW(choose_constants(table("b3unit"), Sign::Positive));
}

TEST(Permute, Table1SwapPreservesEveryAxiom) {
    const FiniteStructure& m = table("table1");
    const FiniteStructure p = permute(m, {1, 0});
    EXPECT_FALSE(p == m);
    for (const auto& name : AxiomCorpus::standard().axiom_names())
        if (!mentions_constants(ax(name)))
            EXPECT_EQ(evaluate(p, ax(name)), evaluate(m, ax(name))) << name;
    EXPECT_EQ(permute(p, {1, 0}), m);
    for (Element i = 0; i < 2; ++i)
        for (Element j = 0; j < 2; ++j)
            for (Element k = 0; k < 2; ++k) {
                EXPECT_EQ(p.tau(1 - i, 1 - j, 1 - k), 1 - m.tau(i, j, k));
                EXPECT_EQ(p.lin(1 - i, 1 - j, 1 - k), m.lin(i, j, k));
            }
}

TEST(Permute, MovesConstantsAndInverts) {
    const FiniteStructure m = choose_constants(table("table2"), Sign::Positive);
    const std::vector<Element> pi{2, 0, 1};
    const FiniteStructure p = permute(m, pi);
    const auto& c = *m.constants();
    EXPECT_EQ(p.constants(), (ConstantTriple{pi[c[0]], pi[c[1]], pi[c[2]]}));
    EXPECT_EQ(permute(p, inverse_permutation(pi)), m);
    EXPECT_THROW(permute(m, {0, 0, 1}), std::invalid_argument);
    EXPECT_THROW(permute(m, {0, 1}), std::invalid_argument);
}

TEST(ModelText, RoundTripsEveryFixture) {
    for (const auto& t : fixture_tables()) {
        EXPECT_EQ(parse_model_text(to_model_text(t.structure)), t.structure) << t.id;
        EXPECT_EQ(parse_model_json(to_model_json(t.structure)), t.structure) << t.id;
        EXPECT_EQ(parse_model(to_model_json(t.structure).dump(2)), t.structure) << t.id;
    }
}

TEST(ModelText, Format) {
    const std::string text = to_model_text(table("b7unit"));
    EXPECT_EQ(text, "domain 1\nconstants 1 1 1\ntau 1 1 1 = 1\nL+ 1,1,1\n");
    EXPECT_EQ(to_model_text(table("b3unit")), "domain 1\ntau 1 1 1 = 1\nL+ none\n");
}

TEST(ModelText, AcceptsCommentsAndBlankLines) {
    const std::string text = "# unit\n\ndomain 1   # one point\ntau 1 1 1 = 1\n\nL+ none\n";
    EXPECT_EQ(parse_model_text(text), table("b3unit"));
}

TEST(ModelText, RejectsMalformedInput) {
    EXPECT_THROW(parse_model_text(""), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 0\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\nL+ none\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\ntau 1 1 1 = 2\nL+ none\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\ntau 1 1 1 = 1\ntau 1 1 1 = 1\nL+ none\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\ntau 1 1 1 = 1\nL+ 1,1\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\ntau 1 1 1 = 1\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain 1\nconstants 1 1\ntau 1 1 1 = 1\nL+ none\n"), ModelFormatError);
    EXPECT_THROW(parse_model_text("domain x\n"), ModelFormatError);
}

TEST(ModelJson, RejectsMalformedInput) {
    EXPECT_THROW(parse_model("{"), ModelFormatError);
    EXPECT_THROW(parse_model(R"({"domain": 1, "tau": [], "L+": []})"), ModelFormatError);
    EXPECT_THROW(parse_model(R"({"domain": 1, "tau": [[1,1,1,2]], "L+": []})"), ModelFormatError);
    EXPECT_THROW(parse_model(R"({"domain": 1, "tau": [[1,1,1,1]]})"), ModelFormatError);
    EXPECT_THROW(parse_model(R"({"domain": 1, "tau": [[1,1,1,1]], "L+": [[1,1]]})"), ModelFormatError);
    EXPECT_NO_THROW(parse_model(R"({"domain": 1, "tau": [[1,1,1,1]], "L+": [], "constants": null})"));
}
