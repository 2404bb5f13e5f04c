#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "shiftfp/corpus.hpp"
#include "shiftfp/pipeline.hpp"
#include "shiftfp/verifier.hpp"

using namespace shiftfp;

TEST(Corpus, ListIsStableUniqueAndIncludesExample) {
    const auto a = list_instances();
    EXPECT_EQ(a, list_instances());
    EXPECT_EQ(std::set<std::string>(a.begin(), a.end()).size(), a.size());
    EXPECT_NE(std::find(a.begin(), a.end(), "paper-example"), a.end());
    for (const char* n : {"ln-pair-banach-half", "banach-k", "dc-reduction", "negative-identity"}) {
        EXPECT_NE(std::find(a.begin(), a.end(), n), a.end()) << n;
    }
    for (const auto& n : a) EXPECT_EQ(instance(n).name, n);
}

TEST(Corpus, Expectations) {
    EXPECT_EQ(instance("paper-example").expected.fixed_point, 0.0);
    EXPECT_FALSE(instance("negative-identity").expected.contraction_holds);
    EXPECT_FALSE(instance("negative-identity").expected.fixed_point.has_value());
    EXPECT_THROW(instance("no-such-name"), std::out_of_range);
}

TEST(Corpus, BanachKConstantMap) {
    const Instance inst = instance("banach-k:0");
    EXPECT_EQ(inst.map.image(0.0), inst.map.image(3.0));
    EXPECT_EQ(inst.expected.fixed_point, inst.map.image(0.0));
    EXPECT_THROW(instance("banach-k:1"), std::invalid_argument);
    EXPECT_THROW(instance("banach-k:abc"), std::out_of_range);
}

TEST(Corpus, DcReductionMatchesBanachHalf) {
    const ShiftingPair dc = instance("dc-reduction").pair;
    const ShiftingPair bk = instance("banach-k:0.5").pair;
    for (int i = 0; i <= 10000; ++i) {
        const double t = 101.0 * i / 10000.0;
        ASSERT_NEAR(dc.psi.eval(t), bk.psi.eval(t), 1e-12);
        ASSERT_NEAR(dc.phi.eval(t), bk.phi.eval(t), 1e-12);
    }
}

TEST(Corpus, ExamplePsiIsNotAltering) {
    const auto r = check_altering(instance("paper-example").pair.psi, 0, 10000);
    EXPECT_TRUE(r.failed_clause("a"));
    EXPECT_TRUE(r.failed_clause("d"));
}

// Every instance meets its own expectations through the full pipeline.
class CorpusPipeline : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusPipeline, ExpectationsMet) {
    const Instance inst = instance(GetParam());
    const auto r = run_pipeline(inst);
    for (const auto& c : r.checks) EXPECT_TRUE(c.met) << c.name << ": " << c.detail;
    EXPECT_TRUE(r.all_met());
    if (!inst.expected.contraction_holds) EXPECT_TRUE(r.contraction.witness.has_value());
}

INSTANTIATE_TEST_SUITE_P(All, CorpusPipeline, ::testing::ValuesIn(list_instances()),
                         [](const auto& info) {
                             std::string s = info.param;
                             for (char& ch : s) if (ch == '-') ch = '_';
                             return s;
                         });

TEST(Pipeline, ExampleDetails) {
    const auto r = run_pipeline(instance("paper-example"));
    EXPECT_TRUE(r.closure.ok());
    EXPECT_EQ(r.condition_i.violations, 0u);
    EXPECT_TRUE(r.condition_ii.passed());
    EXPECT_GT(r.contraction.worst_margin, 0.0);
    EXPECT_LE(r.trace.iterations(), 20u);
    EXPECT_LT(r.trace.residual, 1e-12);
    EXPECT_EQ(r.uniqueness.verdict, UniquenessVerdict::Unique);
}

TEST(Pipeline, WrongExpectationIsReported) {
    Instance inst = instance("negative-identity");
    inst.expected.contraction_holds = true;
    const auto r = run_pipeline(inst);
    EXPECT_FALSE(r.all_met());
}

TEST(Pipeline, ClosureFailureStopsEarly) {
    Instance inst = instance("ln-pair-banach-half");
    inst.map = SelfMap::single("t + 1");
    const auto r = run_pipeline(inst);
    EXPECT_FALSE(r.closure.ok());
    EXPECT_FALSE(r.all_met());
    EXPECT_EQ(r.checks.size(), 1u);
}
