#include "shiftfp/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "shiftfp/expression.hpp"
#include "shiftfp/seed.hpp"

namespace shiftfp {

bool PipelineResult::all_met() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const ExpectationCheck& c) { return c.met; });
}

PipelineResult run_pipeline(const Instance& inst, const CheckSettings& cs, const PicardOptions& picard_opts) {
    PipelineResult res;
    const MetricSpace& space = *inst.space;

    res.closure = verify_closure(space, inst.map, cs.seed, cs.closure_samples);
    res.checks.push_back({"closure", res.closure.ok(),
                          std::to_string(res.closure.violations) + " violations in " +
                              std::to_string(res.closure.checked) + " points"});
    if (!res.closure.ok()) {
        // Every later stage applies the map and would throw.
        return res;
    }

    res.condition_i = check_condition_i(inst.pair, derive_seed(cs.seed, "pipeline/condition_i"), cs.n_samples,
                                        cs.tol_eq, cs.tol_ord, cs.range());
    const auto grid = condition_ii_grid(inst.pair, cs.range(), cs.grid_size);
    res.condition_ii = check_condition_ii(inst.pair, grid, cs.tol);
    const bool pair_ok = res.condition_i.passed() && res.condition_ii.passed();
    res.checks.push_back({"pair_conditions", pair_ok == inst.expected.pair_conditions_hold,
                          std::string("condition (i) ") + std::string(to_string(res.condition_i.verdict)) +
                              ", condition (ii) " + std::string(to_string(res.condition_ii.verdict))});

    res.contraction =
        check_contraction(space, inst.map, inst.pair, derive_seed(cs.seed, "pipeline/contraction"), cs.n_samples, cs.tol);
    const bool holds = res.contraction.verdict == Verdict::Pass;
    const bool contraction_met =
        holds == inst.expected.contraction_holds && (holds || res.contraction.witness.has_value());
    res.checks.push_back({"contraction", contraction_met,
                          std::string(to_string(res.contraction.verdict)) + ", worst margin " +
                              format_double(res.contraction.worst_margin)});

    res.trace = picard(space, inst.map, inst.x0, picard_opts);
    res.uniqueness =
        probe_uniqueness(space, inst.map, derive_seed(cs.seed, "pipeline/uniqueness"), cs.starts, picard_opts,
                         cs.tol_unique);
    if (inst.expected.fixed_point) {
        const double fp = *inst.expected.fixed_point;
        const double err = std::fabs(res.trace.last().value - fp);
        res.checks.push_back({"fixed_point",
                              res.trace.verdict == IterationVerdict::Converged && err <= cs.tol_unique,
                              std::string(to_string(res.trace.verdict)) + " after " +
                                  std::to_string(res.trace.iterations()) + " iterations, |x_N - x*| = " +
                                  format_double(err)});
        double worst = 0.0;
        for (const Point& z : res.uniqueness.limits) worst = std::max(worst, std::fabs(z.value - fp));
        res.checks.push_back({"uniqueness",
                              res.uniqueness.verdict == UniquenessVerdict::Unique && worst <= cs.tol_unique,
                              std::string(to_string(res.uniqueness.verdict)) + ", max |limit - x*| = " +
                                  format_double(worst)});
    }
    return res;
}

}  // namespace shiftfp
