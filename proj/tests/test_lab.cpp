#include <gtest/gtest.h>

#include <stdexcept>

#include <centrans/centrans.hpp>

using namespace centrans;

namespace {

const AxiomCorpus& corpus() { return AxiomCorpus::standard(); }

SearchConfig sizes(int lo, int hi, unsigned jobs = 1) {
    SearchConfig c;
    c.min_size = lo;
    c.max_size = hi;
    c.jobs = jobs;
    return c;
}

AxiomSystem subsystem(const std::string& name, std::initializer_list<const char*> members) {
    AxiomSystem s{name, {}};
    for (const char* m : members)
        s.axioms.push_back({m, corpus().axiom(m)});
    return s;
}

}  // namespace

TEST(Independence, SigmaB5HasAModel) {
    const auto r = independence(corpus().system("Sigma"), "B5", sizes(1, 4));
    EXPECT_EQ(r.verdict, IndependenceVerdict::IndependentWithModel);
    ASSERT_TRUE(r.model);
    EXPECT_TRUE(satisfies(*r.model, corpus().system("Sigma").independence_set("B5")).satisfied);
    EXPECT_EQ(r.signed_set, "+A3 +B1 +B2 +B3 +B4 -B5 +B6 +B7");
}

TEST(Independence, SigmaFB5IsDependentThroughFive) {
    const auto r = independence(corpus().system("SigmaF"), "B5", sizes(1, 5));
    EXPECT_EQ(r.verdict, IndependenceVerdict::DependentUpToBound);
    EXPECT_EQ(r.bound, 5);
    EXPECT_FALSE(r.model);
    EXPECT_EQ(r.ladder.size(), 5u);
}

TEST(Independence, SigmaSharpB6HasAModel) {
    const auto r = independence(corpus().system("SigmaSharp"), "B6", sizes(1, 3));
    EXPECT_EQ(r.verdict, IndependenceVerdict::IndependentWithModel);
    ASSERT_TRUE(r.model);
    EXPECT_TRUE(satisfies(*r.model, corpus().system("SigmaSharp").independence_set("B6")).satisfied);
}

TEST(Independence, UnknownTargetIsRejected) {
    EXPECT_THROW(independence(corpus().system("SigmaSharp"), "B5", sizes(1, 2)), UnknownNameError);
}

TEST(Minimality, SigmaSharpSmall) {
    const auto rs = minimality(corpus().system("SigmaSharp"), sizes(1, 3));
    ASSERT_EQ(rs.size(), 8u);
    for (const auto& r : rs) {
        if (r.target == "B4") {
            EXPECT_EQ(r.verdict, IndependenceVerdict::DependentUpToBound);
            EXPECT_EQ(r.bound, 3);
        } else {
            EXPECT_EQ(r.verdict, IndependenceVerdict::IndependentWithModel) << r.target;
            ASSERT_TRUE(r.model) << r.target;
            EXPECT_TRUE(satisfies(*r.model, corpus().system("SigmaSharp").independence_set(r.target)).satisfied);
        }
    }
}

TEST(SignVectors, IndexOrder) {
    EXPECT_EQ(sign_string(signs_of_index(0, 3)), "+++");
    EXPECT_EQ(sign_string(signs_of_index(1, 3)), "++-");
    EXPECT_EQ(sign_string(signs_of_index(4, 3)), "-++");
    EXPECT_EQ(sign_string(signs_of_index(7, 3)), "---");
    for (std::uint32_t i = 0; i < 256; ++i)
        EXPECT_EQ(index_of_signs(signs_of_index(i, 8)), i);
}

TEST(ParallelFor, RunsEveryItemAndRethrows) {
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit)
        EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7)
                                      throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(ExitCodes, Severity) {
    EXPECT_EQ(exit_code_for({Verdict::Sat, Verdict::Sat}), 0);
    EXPECT_EQ(exit_code_for({Verdict::Sat, Verdict::UnsatExhausted}), 10);
    EXPECT_EQ(exit_code_for({Verdict::UnsatExhausted, Verdict::Unknown}), 20);
    EXPECT_EQ(exit_code_for({}), 0);
}

TEST(Reinterpret, RejectsModelsOfB4) {
    EXPECT_THROW(reinterpret_constants(fixture("b3unit").structure), std::invalid_argument);
    EXPECT_THROW(reinterpret_constants(fixture("b7unit").structure), std::invalid_argument);
}

TEST(Reinterpret, TurnsANegatedB4ModelIntoANegatedB4B7Model) {
    const AxiomSystem sigma = corpus().system("Sigma");
    const auto found = find_model_sweep(sigma.independence_set("B4"), sizes(1, 4));
    ASSERT_TRUE(found.sat());
    const auto r = reinterpret_constants_detailed(*found.model);
    EXPECT_FALSE(evaluate(r.structure, corpus().axiom("B7")));
    EXPECT_TRUE(r.structure.lin(r.triple[0], r.triple[1], r.triple[2]));
    for (const auto& name : corpus().axiom_names())
        if (!mentions_constants(corpus().axiom(name)))
            EXPECT_EQ(evaluate(r.structure, corpus().axiom(name)), evaluate(*found.model, corpus().axiom(name)))
                << name;
    std::vector<Sign> signs(sigma.axioms.size(), Sign::Positive);
    signs[4] = Sign::Negative;  // B4
    signs[7] = Sign::Negative;  // B7
    EXPECT_TRUE(satisfies(r.structure, sigma.with_signs(signs)).satisfied);
    const auto vs = b4_violations(*found.model);
    ASSERT_FALSE(vs.empty());
    const auto& w = r.witness;
    EXPECT_TRUE(found.model->lin(w.a, w.b, w.c));
    EXPECT_FALSE(found.model->lin(w.x, found.model->tau(w.a, w.b, w.x), found.model->tau(w.a, w.c, w.x)));
}

TEST(CompleteIndependence, AgreesWithEnumerationOnASmallSystem) {
    const AxiomSystem t = subsystem("T", {"A3", "B1", "B3", "B7"});
    const auto r = complete_independence(t, sizes(1, 2, 4));
    ASSERT_EQ(r.entries.size(), 16u);
    std::set<std::uint32_t> profiles = brute_force_sign_profiles(t.axioms, 1);
    for (auto p : brute_force_sign_profiles(t.axioms, 2))
        profiles.insert(p);
    for (const auto& e : r.entries) {
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < e.signs.size(); ++i)
            if (e.signs[i] == Sign::Positive)
                bits |= 1u << i;
        const bool expected = profiles.count(bits) != 0;
        EXPECT_EQ(e.verdict == Verdict::Sat, expected) << e.label;
        EXPECT_NE(e.verdict, Verdict::Unknown) << e.label;
        if (e.model)
            EXPECT_TRUE(satisfies(*e.model, t.with_signs(e.signs)).satisfied) << e.label;
    }
    EXPECT_EQ(r.entry(signs_of_index(0, 4)).index, 0u);
}

TEST(CompleteIndependence, DerivesNegatedB4B7ByReinterpretation) {
    const AxiomSystem t = subsystem("T", {"B1", "B4", "B7"});
    const auto r = complete_independence(t, sizes(1, 3, 2));
    const auto& derived = r.entry({Sign::Positive, Sign::Negative, Sign::Negative});
    EXPECT_EQ(derived.verdict, Verdict::Sat);
    EXPECT_EQ(derived.method, "reinterpreted-constants");
    ASSERT_TRUE(derived.model);
    EXPECT_TRUE(satisfies(*derived.model, t.with_signs(derived.signs)).satisfied);

    CompleteOptions plain;
    plain.derive_b4_b7 = false;
    const auto s = complete_independence(t, sizes(1, 3, 2), plain);
    EXPECT_EQ(s.entry(derived.signs).method, "search");
    EXPECT_EQ(s.entry(derived.signs).verdict, Verdict::Sat);
}

TEST(CompleteIndependence, NegatedVectorsAgreeWithPlainIndependence) {
    const AxiomSystem t = subsystem("T", {"A3", "B1", "B2", "B3", "B8"});
    const auto r = complete_independence(t, sizes(1, 3, 4));
    for (std::size_t j = 0; j < t.axioms.size(); ++j) {
        std::vector<Sign> signs(t.axioms.size(), Sign::Positive);
        signs[j] = Sign::Negative;
        const auto ind = independence(t, t.axioms[j].name, sizes(1, 3));
        EXPECT_EQ(r.entry(signs).verdict == Verdict::Sat,
                  ind.verdict == IndependenceVerdict::IndependentWithModel)
            << t.axioms[j].name;
    }
}

TEST(CompleteIndependence, AxiomLimit) {
    AxiomSystem big{"big", {}};
    for (int i = 0; i < 17; ++i)
        big.axioms.push_back({"X" + std::to_string(i), corpus().axiom("B1")});
    EXPECT_THROW(complete_independence(big, sizes(1, 1)), std::invalid_argument);
}

TEST(B7Prime, SmallBoundStructure) {
    const auto r = b7prime_analysis(sizes(1, 3, 4), 2);
    EXPECT_EQ(r.axioms, (std::vector<std::string>{"A3", "B1", "B2", "B3", "B4", "B6", "B8"}));
    ASSERT_EQ(r.entries.size(), 128u);
    EXPECT_TRUE(r.models_are_l_total);
    EXPECT_EQ(r.sat_vectors.size() + r.exhausted_vectors.size() + r.unknown_vectors.size(), 128u);
    EXPECT_EQ(r.b4_verdict, Verdict::UnsatExhausted);
    EXPECT_EQ(r.b4_exhausted_through, 3);
    for (const auto& e : r.entries) {
        if (!e.model)
            continue;
        for (bool l : e.model->lin_table())
            EXPECT_TRUE(l) << e.label;
        // L-total structures satisfy A3, B1, B3 and B4, so those signs are +.
        for (std::size_t j : {0u, 1u, 3u, 4u})
            EXPECT_EQ(e.signs[j], Sign::Positive) << e.label;
    }
    ASSERT_EQ(r.l_total_checks.size(), 4u);
    for (const auto& c : r.l_total_checks)
        EXPECT_TRUE(c.holds()) << c.axiom;
    ASSERT_EQ(r.table6.size(), 2u);
    EXPECT_EQ(r.table6_rows, table6_printed_rows());
}
