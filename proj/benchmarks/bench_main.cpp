#include <benchmark/benchmark.h>

#include "shiftfp/conditions.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/expression.hpp"
#include "shiftfp/solver.hpp"
#include "shiftfp/verifier.hpp"

using namespace shiftfp;

static void BM_ParseExpr(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_expr("ln(1/12 + 5/12*t) - abs(t - 1) * abs(t - 1) / (1 + t)"));
    }
}
BENCHMARK(BM_ParseExpr);

static void BM_ExprEval(benchmark::State& state) {
    const Expression e = parse_expr("ln(1/12 + 5/12*t)");
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.eval(t));
        t += 1e-3;
    }
}
BENCHMARK(BM_ExprEval);

static void BM_PiecewiseEval(benchmark::State& state) {
    const ScalarFn psi = instance("paper-example").pair.psi;
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi.eval(t));
        t = t > 100.0 ? 0.0 : t + 0.37;
    }
}
BENCHMARK(BM_PiecewiseEval);

static void BM_CheckContraction(benchmark::State& state) {
    const Instance inst = instance("paper-example");
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_contraction(*inst.space, inst.map, inst.pair, 7, n));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CheckContraction)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SearchCounterexample(benchmark::State& state) {
    const Instance inst = instance("paper-example");
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_counterexample(*inst.space, inst.map, inst.pair, 7, 10000));
    }
}
BENCHMARK(BM_SearchCounterexample)->Unit(benchmark::kMillisecond);

static void BM_ConditionI(benchmark::State& state) {
    const ShiftingPair pair = instance("paper-example").pair;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_condition_i(pair, 7, 100000));
    }
}
BENCHMARK(BM_ConditionI)->Unit(benchmark::kMillisecond);

static void BM_Picard(benchmark::State& state) {
    const Instance inst = instance("banach-k:0.9");
    for (auto _ : state) {
        benchmark::DoNotOptimize(picard(*inst.space, inst.map, Point{0.0}));
    }
}
BENCHMARK(BM_Picard);
BENCHMARK_MAIN();
