#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftfp/conditions.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/defaults.hpp"
#include "shiftfp/self_map.hpp"
#include "shiftfp/solver.hpp"
#include "shiftfp/verifier.hpp"

namespace shiftfp {

/// Sampling sizes, tolerances and the root seed shared by every check.
struct CheckSettings {
    std::uint64_t seed = 0;
    std::size_t n_samples = defaults::kSamples;
    double tol = defaults::kTol;
    double tol_eq = defaults::kTol;
    double tol_ord = defaults::kTol;
    std::size_t grid_size = defaults::kGridSize;
    int n_int = defaults::kNInt;
    /// Upper end of the sampled distance range; 2 N_int + 1 when unset.
    std::optional<double> u_max;
    std::size_t closure_samples = defaults::kClosureSamples;
    std::size_t search_budget = defaults::kSearchBudget;
    std::size_t starts = defaults::kStarts;
    double tol_unique = defaults::kTolUnique;

    double range() const noexcept { return u_max.value_or(2.0 * n_int + 1.0); }
};

struct ExpectationCheck {
    std::string name;
    bool met = false;
    std::string detail;
};

struct PipelineResult {
    ClosureReport closure;
    ConditionReport condition_i;
    ConditionReport condition_ii;
    ContractionReport contraction;
    IterationTrace trace;
    UniquenessReport uniqueness;
    std::vector<ExpectationCheck> checks;

    bool all_met() const noexcept;
};

/// Closure, both pair conditions, the sampled contraction check, a Picard
/// solve from the instance's start and a uniqueness probe, each compared
/// against the instance's expectations.
PipelineResult run_pipeline(const Instance& inst, const CheckSettings& checks = {},
                            const PicardOptions& picard_opts = {});

}  // namespace shiftfp
