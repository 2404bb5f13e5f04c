#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/error.hpp"
#include "shiftfp/verifier.hpp"

using namespace shiftfp;

namespace {

// Margin of the contraction inequality computed from the closed forms.
double oracle_example_margin(double x, double y) {
    const double tx = oracle::example_map(x), ty = oracle::example_map(y);
    return oracle::example_phi(oracle::hybrid_distance(x, y)) - oracle::example_psi(oracle::hybrid_distance(tx, ty));
}

void expect_recomputes(const Instance& inst, const ContractionWitness& w) {
    const auto& s = *inst.space;
    const double d = s.distance(w.x, w.y);
    const double tx = inst.map.image(w.x.value), ty = inst.map.image(w.y.value);
    const double dt = s.distance({s.canonical(tx)}, {s.canonical(ty)});
    EXPECT_NEAR(w.d_xy, d, 1e-12);
    EXPECT_NEAR(w.tx, tx, 1e-12);
    EXPECT_NEAR(w.ty, ty, 1e-12);
    EXPECT_NEAR(w.d_txty, dt, 1e-12);
    EXPECT_NEAR(w.psi, inst.pair.psi.eval(dt), 1e-12);
    EXPECT_NEAR(w.phi, inst.pair.phi.eval(d), 1e-12);
    EXPECT_NEAR(w.margin, w.phi - w.psi, 1e-12);
}

}  // namespace

TEST(CheckContraction, ExampleTriplePasses) {
    const Instance inst = instance("paper-example");
    const auto r = check_contraction(*inst.space, inst.map, inst.pair, 0, 100000);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_GT(r.worst_margin, 0.0);
    EXPECT_EQ(r.samples_used, 100000u);
    ASSERT_TRUE(r.witness.has_value());
    expect_recomputes(inst, *r.witness);
    EXPECT_EQ(r.diagonal_margin, 0.0);
}

TEST(CheckContraction, CaseOneSpotValue) {
    const Instance inst = instance("paper-example");
    const auto w = evaluate_pair(*inst.space, inst.map, inst.pair, {0.5}, {0.0});
    EXPECT_DOUBLE_EQ(w.d_txty, 0.1);
    EXPECT_NEAR(w.psi, std::log(1.5 / 12.0), 1e-15);
    EXPECT_NEAR(w.phi, std::log(2.5 / 12.0), 1e-15);
    EXPECT_NEAR(w.margin, std::log(2.5 / 1.5), 1e-14);
}

TEST(CheckContraction, IdentityWithLnPairViolated) {
    const Instance inst = instance("negative-identity");
    const auto r = check_contraction(*inst.space, inst.map, inst.pair, 0, 1000);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_GT(r.witness->psi, r.witness->phi + 1e-9);
    EXPECT_NEAR(r.witness->psi, oracle::ln_psi(r.witness->d_xy), 1e-12);
    EXPECT_NEAR(r.witness->phi, oracle::ln_phi(r.witness->d_xy), 1e-12);
}

TEST(CheckContraction, DiagonalFailureIsReported) {
    const ShiftingPair shifted{ScalarFn::single("t + 1"), ScalarFn::identity()};
    const auto r = check_contraction(*interval_space(0, 1), SelfMap::single("t/2"), shifted, 0, 100);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    EXPECT_EQ(r.diagonal_margin, -1.0);
    EXPECT_LE(r.worst_margin, -1.0);
}

TEST(CheckContraction, ClosureViolationThrows) {
    EXPECT_THROW(check_contraction(*interval_space(0, 1), SelfMap::single("t + 1"), from_banach(0.5), 0, 100),
                 ClosureError);
}

TEST(Search, IdentityWithBanachHalfViolated) {
    const auto r = search_counterexample(*interval_space(0, 1), SelfMap::identity(), from_banach(0.5), 0, 1000);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NEAR(r.witness->margin, -r.witness->d_xy / 2, 1e-15);
}

TEST(Search, HalvingWithBanachHalfPassesAtZeroMargin) {
    const auto r = search_counterexample(*interval_space(0, 1), SelfMap::single("t/2"), from_banach(0.5), 0, 10000);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_GE(r.worst_margin, -1e-9);
    EXPECT_LE(r.worst_margin, 1e-12);
}

// The literal rule sends 1 to 3/125; for y in (39/50, 1) the inequality fails.
TEST(Search, ExampleTripleHasViolationAtOne) {
    EXPECT_LT(oracle_example_margin(1.0, 0.9), 0.0);
    EXPECT_GT(oracle_example_margin(1.0, 0.7), 0.0);
    EXPECT_NEAR(oracle_example_margin(1.0, 0.78), 0.0, 1e-12);

    const Instance inst = instance("paper-example");
    const auto w = evaluate_pair(*inst.space, inst.map, inst.pair, {1.0}, {0.9});
    EXPECT_NEAR(w.margin, oracle_example_margin(1.0, 0.9), 1e-12);

    const auto r = search_counterexample(*inst.space, inst.map, inst.pair, 0, 100000);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    ASSERT_TRUE(r.witness.has_value());
    const auto& v = *r.witness;
    EXPECT_TRUE(v.x.value == 1.0 || v.y.value == 1.0);
    const double other = v.x.value == 1.0 ? v.y.value : v.x.value;
    EXPECT_GT(other, 0.78);
    EXPECT_NEAR(v.margin, oracle_example_margin(v.x.value, v.y.value), 1e-12);
    expect_recomputes(inst, v);
}

TEST(Search, CaseOneVariantPasses) {
    const Instance inst = instance("paper-example-case1");
    const auto r = search_counterexample(*inst.space, inst.map, inst.pair, 0, 100000);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_GT(r.worst_margin, 0.0);
}

TEST(Search, NegativeIdentityWithinThousandEvaluations) {
    const Instance inst = instance("negative-identity");
    const auto r = search_counterexample(*inst.space, inst.map, inst.pair, 0, 1000);
    EXPECT_EQ(r.verdict, Verdict::Violated);
    EXPECT_LE(r.samples_used, 1000u);
}

// Property: verdict on the example triple is stable across seeds.
TEST(VerifierProperty, ExampleSeedStable) {
    const Instance inst = instance("paper-example");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = check_contraction(*inst.space, inst.map, inst.pair, seed, 20000);
        EXPECT_EQ(r.verdict, Verdict::Pass) << seed;
    }
}

// Property: worst margin of the search never increases with the budget.
TEST(VerifierProperty, SearchMonotoneInBudget) {
    for (const char* name : {"paper-example", "paper-example-case1", "ln-pair-banach-half", "negative-identity"}) {
        const Instance inst = instance(name);
        double prev = INFINITY;
        for (std::size_t budget : {1u, 10u, 100u, 1000u, 5000u, 20000u}) {
            const auto r = search_counterexample(*inst.space, inst.map, inst.pair, 17, budget);
            EXPECT_LE(r.worst_margin, prev) << name << " " << budget;
            EXPECT_LE(r.samples_used, budget);
            prev = r.worst_margin;
        }
    }
}

// Property: every reported witness recomputes, and violated witnesses exceed tol.
TEST(VerifierProperty, WitnessesRecomputeAndAreSound) {
    for (const auto& name : list_instances()) {
        const Instance inst = instance(name);
        for (std::uint64_t seed : {0u, 1u, 2u}) {
            for (const auto& r : {check_contraction(*inst.space, inst.map, inst.pair, seed, 2000),
                                  search_counterexample(*inst.space, inst.map, inst.pair, seed, 2000)}) {
                ASSERT_TRUE(r.witness.has_value()) << name;
                expect_recomputes(inst, *r.witness);
                if (r.verdict == Verdict::Violated && r.witness->margin == r.worst_margin) {
                    EXPECT_GT(r.witness->psi, r.witness->phi + 1e-9) << name;
                }
            }
        }
    }
}

// Property: random points of the example space reproduce the closed-form margin.
TEST(VerifierProperty, ExampleMarginMatchesOracle) {
    const Instance inst = instance("paper-example");
    gen::Gen g(31);
    for (int i = 0; i < 5000; ++i) {
        const double x = g.hybrid_point(), y = g.hybrid_point();
        if (x == y) continue;
        const auto w = evaluate_pair(*inst.space, inst.map, inst.pair, {x}, {y});
        ASSERT_NEAR(w.margin, oracle_example_margin(x, y), 1e-12) << x << " " << y;
    }
}
