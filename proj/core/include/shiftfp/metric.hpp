#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shiftfp/seed.hpp"

namespace shiftfp {

/// Element of a metric space. Every built-in space embeds in R.
struct Point {
    double value = 0.0;

    friend auto operator<=>(const Point&, const Point&) = default;
};

/// Serializable description of a built-in space.
struct SpaceDecl {
    std::string kind;  // "interval" | "hybrid" | "finite"
    double lo = 0.0;
    double hi = 1.0;
    int n_int = 50;
    std::vector<double> points;
};

/// A metric space over real-valued points.
///
/// Completeness is a property of the construction and is documented per
/// space; it is never checked numerically. Implementations are immutable and
/// all randomness comes through the caller's Rng.
class MetricSpace {
public:
    virtual ~MetricSpace() = default;

    virtual bool contains(double value) const = 0;

    /// Canonical representative of a value (snaps near-integers in the hybrid
    /// space). Identity for spaces without such rounding.
    virtual double canonical(double value) const { return value; }

    /// Distance between two members. Behaviour on non-members is unspecified.
    virtual double distance(Point x, Point y) const = 0;

    /// Sampling is organised by components (e.g. the continuum [0,1] and the
    /// integer lattice of the hybrid space); pair strata are built from them.
    virtual std::size_t component_count() const { return 1; }
    virtual Point draw_from(Rng& rng, std::size_t component) const = 0;

    /// One draw of the space sampler.
    virtual Point draw(Rng& rng) const;

    /// Nearby member for local search.
    virtual Point perturb(Rng& rng, Point x, double scale) const = 0;

    /// Extreme or otherwise distinguished members probed deterministically.
    virtual std::vector<Point> anchor_points() const = 0;

    virtual std::string description() const = 0;

    /// Declaration for config export; empty for spaces built from callables.
    virtual std::optional<SpaceDecl> declaration() const { return std::nullopt; }

    /// `count` sampler draws from the given seed.
    std::vector<Point> sample(std::uint64_t seed, std::size_t count) const;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

/// [lo, hi] with d(x,y) = |x - y| and a uniform sampler. Complete as a closed
/// subset of R. Throws std::invalid_argument unless lo < hi, both finite.
SpacePtr interval_space(double lo, double hi);

/// X = [0,1] u {2,3,4,...} with d(x,y) = |x - y| when both lie in [0,1],
/// x + y otherwise, and 0 on the diagonal. Complete: every Cauchy sequence
/// is eventually in [0,1] or eventually constant. The sampler picks the
/// continuum or the integers {2..n_int} with probability 1/2 each.
///
/// A value within 1e-9 of an integer >= 2 is treated as that integer.
SpacePtr hybrid_space(int n_int = 50);

/// Finite subset of R with the absolute-value metric.
SpacePtr finite_space(std::vector<double> points);

/// Space assembled from callables. Used for spaces that are not metric at all
/// (to exercise the axiom checker) and for ad hoc experiments.
struct CustomSpaceSpec {
    std::function<bool(double)> membership;
    std::function<double(double, double)> distance;
    std::function<std::vector<double>(std::uint64_t seed, std::size_t count)> sampler;
    std::string description;
    std::vector<double> anchors;
};
SpacePtr custom_space(CustomSpaceSpec spec);

SpacePtr make_space(const SpaceDecl& decl);

inline constexpr double kHybridIntegerSnap = 1e-9;

// ---------------------------------------------------------------------------
// Metric axioms

struct IdentityWitness {
    Point x;
    double d_xx = 0.0;
};

struct SymmetryWitness {
    Point x, y;
    double d_xy = 0.0;
    double d_yx = 0.0;
};

struct TriangleWitness {
    Point x, y, z;
    double d_xy = 0.0;
    double d_yz = 0.0;
    double d_xz = 0.0;
    /// d_xz - d_xy - d_yz; positive means the inequality fails.
    double excess = 0.0;
};

struct AxiomReport {
    std::size_t pairs_checked = 0;
    std::size_t triples_checked = 0;
    std::size_t identity_violations = 0;
    std::size_t negativity_violations = 0;
    std::size_t symmetry_violations = 0;
    std::size_t triangle_violations = 0;
    std::optional<IdentityWitness> worst_identity;
    std::optional<SymmetryWitness> worst_symmetry;
    std::optional<TriangleWitness> worst_triangle;

    bool ok() const noexcept {
        return identity_violations == 0 && negativity_violations == 0 && symmetry_violations == 0 &&
               triangle_violations == 0;
    }
};

/// Samples points, pairs and triples and reports axiom violations above tol.
/// All ordered triples of anchor points are checked before random triples.
AxiomReport check_metric_axioms(const MetricSpace& space, std::uint64_t seed, std::size_t n_pairs,
                                std::size_t n_triples, double tol);

}  // namespace shiftfp
