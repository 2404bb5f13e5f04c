#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "shiftfp/conditions.hpp"
#include "shiftfp/defaults.hpp"
#include "shiftfp/metric.hpp"
#include "shiftfp/self_map.hpp"

namespace shiftfp {

/// Everything needed to recompute the contraction margin at (x, y).
struct ContractionWitness {
    Point x, y;
    double d_xy = 0.0;
    double tx = 0.0;
    double ty = 0.0;
    double d_txty = 0.0;
    double psi = 0.0;  // psi(d(Tx,Ty))
    double phi = 0.0;  // phi(d(x,y))
    double margin = 0.0;  // phi - psi
};

/// verdict is Pass iff worst_margin >= -tol. worst_margin is taken over
/// pairs x != y; the diagonal (psi(0) <= phi(0)) is checked once and only
/// enters worst_margin when it fails.
struct ContractionReport {
    Verdict verdict = Verdict::Pass;
    double worst_margin = 0.0;
    std::optional<ContractionWitness> witness;
    std::size_t samples_used = 0;
    double diagonal_margin = 0.0;
};

/// Margin phi(d(x,y)) - psi(d(Tx,Ty)) at one pair.
ContractionWitness evaluate_pair(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair, Point x,
                                 Point y);

/// Samples n pairs x != y split evenly over the strata (every pair of space
/// components, then the plain sampler) and reports the worst margin.
/// Throws ClosureError / MembershipError / DomainError from map or pair evaluation.
ContractionReport check_contraction(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair,
                                    std::uint64_t seed, std::size_t n, double tol = defaults::kTol);

/// Adaptive search for the minimal margin: forced probes at anchor pairs and
/// breakpoint-adjacent distances, then random restarts each followed by a
/// local perturbation descent. The evaluation sequence does not depend on
/// the budget, so a larger budget never reports a larger worst margin.
ContractionReport search_counterexample(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair,
                                        std::uint64_t seed, std::size_t budget, double tol = defaults::kTol);

}  // namespace shiftfp
