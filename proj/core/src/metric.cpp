#include "shiftfp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "shiftfp/expression.hpp"

namespace shiftfp {

Point MetricSpace::draw(Rng& rng) const {
    const std::size_t k = component_count();
    if (k == 1) return draw_from(rng, 0);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    const std::size_t c = pick(rng);
    return draw_from(rng, c);
}

std::vector<Point> MetricSpace::sample(std::uint64_t seed, std::size_t count) const {
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
    return out;
}

namespace {

class IntervalSpace final : public MetricSpace {
public:
    IntervalSpace(double lo, double hi) : lo_(lo), hi_(hi) {}

    bool contains(double v) const override { return v >= lo_ && v <= hi_; }

    double distance(Point x, Point y) const override { return std::fabs(x.value - y.value); }

    Point draw_from(Rng& rng, std::size_t) const override {
        std::uniform_real_distribution<double> u(lo_, hi_);
        return {u(rng)};
    }

    Point perturb(Rng& rng, Point x, double scale) const override {
        std::normal_distribution<double> step(0.0, scale * (hi_ - lo_));
        return {std::clamp(x.value + step(rng), lo_, hi_)};
    }

    std::vector<Point> anchor_points() const override { return {{lo_}, {0.5 * (lo_ + hi_)}, {hi_}}; }

    std::string description() const override {
        return "interval [" + format_double(lo_) + ", " + format_double(hi_) + "] with |x-y|";
    }

    std::optional<SpaceDecl> declaration() const override {
        SpaceDecl d;
        d.kind = "interval";
        d.lo = lo_;
        d.hi = hi_;
        return d;
    }

private:
    double lo_;
    double hi_;
};

class HybridSpace final : public MetricSpace {
public:
    explicit HybridSpace(int n_int) : n_int_(n_int) {}

    double canonical(double v) const override {
        if (v > 1.0) {
            const double r = std::round(v);
            if (r >= 2.0 && std::fabs(v - r) <= kHybridIntegerSnap) return r;
        }
        return v;
    }

    bool contains(double v) const override {
        if (v >= 0.0 && v <= 1.0) return true;
        const double r = std::round(v);
        return r >= 2.0 && std::fabs(v - r) <= kHybridIntegerSnap && std::isfinite(v);
    }

    double distance(Point x, Point y) const override {
        const double a = canonical(x.value);
        const double b = canonical(y.value);
        if (a == b) return 0.0;
        if (a <= 1.0 && b <= 1.0) return std::fabs(a - b);
        return a + b;
    }

    std::size_t component_count() const override { return 2; }

    Point draw_from(Rng& rng, std::size_t component) const override {
        if (component == 0) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return {u(rng)};
        }
        std::uniform_int_distribution<int> k(2, n_int_);
        return {static_cast<double>(k(rng))};
    }

    Point perturb(Rng& rng, Point x, double scale) const override {
        const double v = canonical(x.value);
        if (v <= 1.0) {
            std::normal_distribution<double> step(0.0, scale);
            return {std::clamp(v + step(rng), 0.0, 1.0)};
        }
        std::bernoulli_distribution up(0.5);
        const double next = v + (up(rng) ? 1.0 : -1.0);
        return {std::clamp(next, 2.0, static_cast<double>(n_int_))};
    }

    std::vector<Point> anchor_points() const override {
        return {{0.0}, {1.0}, {2.0}, {static_cast<double>(n_int_)}};
    }

    std::string description() const override {
        return "hybrid X = [0,1] u {2,3,...} (integers sampled up to N_int=" + std::to_string(n_int_) + ")";
    }

    std::optional<SpaceDecl> declaration() const override {
        SpaceDecl d;
        d.kind = "hybrid";
        d.n_int = n_int_;
        return d;
    }

private:
    int n_int_;
};

class FiniteSpace final : public MetricSpace {
public:
    explicit FiniteSpace(std::vector<double> points) : points_(std::move(points)) {}

    bool contains(double v) const override { return std::binary_search(points_.begin(), points_.end(), v); }

    double distance(Point x, Point y) const override { return std::fabs(x.value - y.value); }

    Point draw_from(Rng& rng, std::size_t) const override {
        std::uniform_int_distribution<std::size_t> idx(0, points_.size() - 1);
        return {points_[idx(rng)]};
    }

    Point perturb(Rng& rng, Point x, double) const override {
        auto it = std::lower_bound(points_.begin(), points_.end(), x.value);
        std::size_t i = static_cast<std::size_t>(it - points_.begin());
        if (i >= points_.size()) i = points_.size() - 1;
        std::bernoulli_distribution up(0.5);
        if (up(rng)) {
            if (i + 1 < points_.size()) ++i;
        } else if (i > 0) {
            --i;
        }
        return {points_[i]};
    }

    std::vector<Point> anchor_points() const override { return {{points_.front()}, {points_.back()}}; }

    std::string description() const override {
        return "finite set of " + std::to_string(points_.size()) + " points with |x-y|";
    }

    std::optional<SpaceDecl> declaration() const override {
        SpaceDecl d;
        d.kind = "finite";
        d.points = points_;
        return d;
    }

private:
    std::vector<double> points_;
};

class CustomSpace final : public MetricSpace {
public:
    explicit CustomSpace(CustomSpaceSpec spec) : spec_(std::move(spec)) {}

    bool contains(double v) const override { return spec_.membership(v); }

    double distance(Point x, Point y) const override { return spec_.distance(x.value, y.value); }

    Point draw_from(Rng& rng, std::size_t) const override {
        const auto pts = spec_.sampler(rng(), 1);
        if (pts.empty()) throw std::runtime_error("custom sampler returned no points");
        return {pts.front()};
    }

    Point perturb(Rng& rng, Point, double) const override { return draw_from(rng, 0); }

    std::vector<Point> anchor_points() const override {
        std::vector<Point> out;
        for (double a : spec_.anchors) out.push_back({a});
        return out;
    }

    std::string description() const override { return spec_.description; }

private:
    CustomSpaceSpec spec_;
};

}  // namespace

SpacePtr interval_space(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("interval_space: need finite lo < hi, got [" + format_double(lo) + ", " +
                                    format_double(hi) + "]");
    }
    return std::make_shared<IntervalSpace>(lo, hi);
}

SpacePtr hybrid_space(int n_int) {
    if (n_int < 2) {
        throw std::invalid_argument("hybrid_space: N_int must be at least 2");
    }
    return std::make_shared<HybridSpace>(n_int);
}

SpacePtr finite_space(std::vector<double> points) {
    if (points.empty()) {
        throw std::invalid_argument("finite_space: need at least one point");
    }
    for (double p : points) {
        if (!std::isfinite(p)) throw std::invalid_argument("finite_space: points must be finite");
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return std::make_shared<FiniteSpace>(std::move(points));
}

SpacePtr custom_space(CustomSpaceSpec spec) {
    if (!spec.membership || !spec.distance || !spec.sampler) {
        throw std::invalid_argument("custom_space: membership, distance and sampler are required");
    }
    return std::make_shared<CustomSpace>(std::move(spec));
}

SpacePtr make_space(const SpaceDecl& decl) {
    if (decl.kind == "interval") return interval_space(decl.lo, decl.hi);
    if (decl.kind == "hybrid") return hybrid_space(decl.n_int);
    if (decl.kind == "finite") return finite_space(decl.points);
    throw std::invalid_argument("unknown space kind '" + decl.kind + "'");
}

AxiomReport check_metric_axioms(const MetricSpace& space, std::uint64_t seed, std::size_t n_pairs,
                                std::size_t n_triples, double tol) {
    if (n_pairs == 0 || n_triples == 0 || !(tol > 0.0)) {
        throw std::invalid_argument("check_metric_axioms: need n_pairs, n_triples >= 1 and tol > 0");
    }
    AxiomReport rep;

    Rng pair_rng = make_rng(seed, "axioms/pairs");
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const Point x = space.draw(pair_rng);
        const Point y = space.draw(pair_rng);
        ++rep.pairs_checked;

        const double dxx = space.distance(x, x);
        if (std::fabs(dxx) > tol) ++rep.identity_violations;
        if (!rep.worst_identity || std::fabs(dxx) > std::fabs(rep.worst_identity->d_xx)) {
            rep.worst_identity = IdentityWitness{x, dxx};
        }

        const double dxy = space.distance(x, y);
        const double dyx = space.distance(y, x);
        if (dxy < -tol || dyx < -tol) ++rep.negativity_violations;
        if (std::fabs(dxy - dyx) > tol) ++rep.symmetry_violations;
        if (!rep.worst_symmetry ||
            std::fabs(dxy - dyx) > std::fabs(rep.worst_symmetry->d_xy - rep.worst_symmetry->d_yx)) {
            rep.worst_symmetry = SymmetryWitness{x, y, dxy, dyx};
        }
    }

    auto check_triple = [&](Point x, Point y, Point z) {
        const double dxy = space.distance(x, y);
        const double dyz = space.distance(y, z);
        const double dxz = space.distance(x, z);
        const double excess = dxz - dxy - dyz;
        ++rep.triples_checked;
        if (excess > tol) ++rep.triangle_violations;
        if (!rep.worst_triangle || excess > rep.worst_triangle->excess) {
            rep.worst_triangle = TriangleWitness{x, y, z, dxy, dyz, dxz, excess};
        }
    };

    const auto anchors = space.anchor_points();
    for (const Point& x : anchors) {
        for (const Point& y : anchors) {
            for (const Point& z : anchors) check_triple(x, y, z);
        }
    }
    Rng triple_rng = make_rng(seed, "axioms/triples");
    for (std::size_t i = 0; i < n_triples; ++i) {
        const Point x = space.draw(triple_rng);
        const Point y = space.draw(triple_rng);
        const Point z = space.draw(triple_rng);
        check_triple(x, y, z);
    }
    return rep;
}

}  // namespace shiftfp
