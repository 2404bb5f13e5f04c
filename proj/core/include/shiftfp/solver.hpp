#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "shiftfp/defaults.hpp"
#include "shiftfp/metric.hpp"
#include "shiftfp/self_map.hpp"

namespace shiftfp {

enum class IterationVerdict { Converged, MaxIterReached, Diverged };

std::string_view to_string(IterationVerdict v) noexcept;

/// Picard sequence x_{n+1} = T x_n with step distances u_n = d(x_{n+1}, x_n).
///
/// residuals[n] = d(x_n, T x_n), so residuals[n] == step_distances[n] for
/// every n < N and residuals[N] is the final residual.
struct IterationTrace {
    std::vector<Point> iterates;
    std::vector<double> step_distances;
    std::vector<double> residuals;
    double residual = 0.0;
    IterationVerdict verdict = IterationVerdict::MaxIterReached;
    /// Count of n with u_n > u_{n-1} + monotone tolerance. Under the
    /// theorem's hypotheses the step distances never increase.
    std::size_t monotone_violations = 0;

    std::size_t iterations() const noexcept { return step_distances.size(); }
    Point last() const { return iterates.back(); }
};

struct PicardOptions {
    double tol_fix = defaults::kTolFix;
    std::size_t max_iter = defaults::kMaxIter;
    double monotone_tol = defaults::kMonotoneTol;
    /// Diverged once u_n > divergence_factor * u_0.
    double divergence_factor = defaults::kDivergenceFactor;
};

/// Iterates from x0 until d(x_n, T x_n) <= tol_fix or max_iter applications.
/// Throws MembershipError for a non-member x0 and ClosureError if an
/// iterate leaves the space.
IterationTrace picard(const MetricSpace& space, const SelfMap& map, Point x0, const PicardOptions& opts = {});

/// True iff the largest pairwise distance among the last `window` iterates
/// is at most tol. Throws std::invalid_argument when the trace has fewer
/// than window + 1 iterates.
bool cauchy_check(const MetricSpace& space, const IterationTrace& trace, std::size_t window, double tol);

enum class UniquenessVerdict { Unique, Ambiguous };

std::string_view to_string(UniquenessVerdict v) noexcept;

struct UniquenessReport {
    std::vector<Point> starts;
    std::vector<Point> limits;
    std::vector<IterationVerdict> run_verdicts;
    std::vector<std::size_t> failed_runs;  // start indices that did not converge
    double max_pairwise_distance = 0.0;
    UniquenessVerdict verdict = UniquenessVerdict::Ambiguous;
};

/// Runs picard from n_starts sampled members. Unique iff every run converged
/// and all limits lie within tol_unique of each other.
UniquenessReport probe_uniqueness(const MetricSpace& space, const SelfMap& map, std::uint64_t seed,
                                  std::size_t n_starts, const PicardOptions& opts = {},
                                  double tol_unique = defaults::kTolUnique);

/// CSV with header `n,x_n,u_n,residual`, one row per iterate; u_n is empty
/// on the last row.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace shiftfp
