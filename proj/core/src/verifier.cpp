#include "shiftfp/verifier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shiftfp/seed.hpp"

namespace shiftfp {

ContractionWitness evaluate_pair(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair, Point x,
                                 Point y) {
    ContractionWitness w;
    w.x = x;
    w.y = y;
    const Point tx = apply(space, map, x);
    const Point ty = apply(space, map, y);
    w.tx = tx.value;
    w.ty = ty.value;
    w.d_xy = space.distance(x, y);
    w.d_txty = space.distance(tx, ty);
    w.psi = pair.psi.eval(w.d_txty);
    w.phi = pair.phi.eval(w.d_xy);
    w.margin = w.phi - w.psi;
    return w;
}

namespace {

struct Stratum {
    std::size_t first;
    std::size_t second;
    bool plain;  // draw both points from the space sampler
};

std::vector<Stratum> strata_for(const MetricSpace& space) {
    std::vector<Stratum> out;
    const std::size_t k = space.component_count();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) out.push_back({a, b, false});
    }
    out.push_back({0, 0, true});
    return out;
}

bool same_point(const MetricSpace& space, Point x, Point y) {
    return space.canonical(x.value) == space.canonical(y.value);
}

/// Draws x != y from a stratum; gives up after a bounded number of retries
/// (e.g. a finite space with a single point).
std::optional<std::pair<Point, Point>> draw_pair(const MetricSpace& space, const Stratum& s, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Point x = s.plain ? space.draw(rng) : space.draw_from(rng, s.first);
        const Point y = s.plain ? space.draw(rng) : space.draw_from(rng, s.second);
        if (!same_point(space, x, y)) return std::make_pair(x, y);
    }
    return std::nullopt;
}

ContractionWitness diagonal_witness(const MetricSpace& space, const ShiftingPair& pair) {
    const auto anchors = space.anchor_points();
    const Point x = anchors.empty() ? Point{0.0} : anchors.front();
    ContractionWitness w;
    w.x = x;
    w.y = x;
    w.psi = pair.psi.eval(0.0);
    w.phi = pair.phi.eval(0.0);
    w.margin = w.phi - w.psi;
    return w;
}

class WorstTracker {
public:
    void offer(const ContractionWitness& w) {
        ++evaluations;
        if (!best || w.margin < best->margin) best = w;
    }

    std::optional<ContractionWitness> best;
    std::size_t evaluations = 0;
};

ContractionReport finish(const MetricSpace& space, const ShiftingPair& pair, WorstTracker& tracker, double tol) {
    ContractionReport rep;
    rep.samples_used = tracker.evaluations;
    const ContractionWitness diag = diagonal_witness(space, pair);
    rep.diagonal_margin = diag.margin;
    if (tracker.best) {
        rep.worst_margin = tracker.best->margin;
        rep.witness = tracker.best;
    } else {
        rep.worst_margin = std::numeric_limits<double>::infinity();
    }
    if (diag.margin < -tol && diag.margin < rep.worst_margin) {
        rep.worst_margin = diag.margin;
        rep.witness = diag;
    }
    rep.verdict = rep.worst_margin >= -tol ? Verdict::Pass : Verdict::Violated;
    return rep;
}

}  // namespace

ContractionReport check_contraction(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair,
                                    std::uint64_t seed, std::size_t n, double tol) {
    if (n == 0 || !(tol > 0.0)) {
        throw std::invalid_argument("check_contraction: need n >= 1 and tol > 0");
    }
    const auto strata = strata_for(space);
    const std::size_t per = n / strata.size();
    WorstTracker tracker;
    for (std::size_t s = 0; s < strata.size(); ++s) {
        // The plain stratum takes the remainder.
        const std::size_t quota = s + 1 == strata.size() ? n - per * (strata.size() - 1) : per;
        Rng rng = make_rng(seed, "contraction/stratum/" + std::to_string(s));
        for (std::size_t i = 0; i < quota; ++i) {
            const auto xy = draw_pair(space, strata[s], rng);
            if (!xy) continue;
            tracker.offer(evaluate_pair(space, map, pair, xy->first, xy->second));
        }
    }
    return finish(space, pair, tracker, tol);
}

ContractionReport search_counterexample(const MetricSpace& space, const SelfMap& map, const ShiftingPair& pair,
                                        std::uint64_t seed, std::size_t budget, double tol) {
    if (budget == 0 || !(tol > 0.0)) {
        throw std::invalid_argument("search_counterexample: need budget >= 1 and tol > 0");
    }
    WorstTracker tracker;
    auto spend = [&](Point x, Point y) -> std::optional<double> {
        if (tracker.evaluations >= budget || same_point(space, x, y)) return std::nullopt;
        const auto w = evaluate_pair(space, map, pair, x, y);
        tracker.offer(w);
        return w.margin;
    };

    // Forced probes.
    const auto anchors = space.anchor_points();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors.size(); ++j) spend(anchors[i], anchors[j]);
    }
    std::vector<double> targets;
    for (const auto* f : {&pair.psi, &pair.phi}) {
        for (double b : f->breakpoints()) {
            targets.push_back(b - defaults::kBreakpointOffset);
            targets.push_back(b);
            targets.push_back(b + defaults::kBreakpointOffset);
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (const Point& a : anchors) {
        for (double s : targets) {
            for (double cand : {a.value + s, a.value - s}) {
                const double c = space.canonical(cand);
                if (space.contains(c)) spend(a, Point{c});
            }
        }
    }

    // Random restarts with local descent.
    constexpr int kLocalSteps = 32;
    constexpr double kInitialScale = 0.1;
    constexpr double kMinScale = 1e-9;
    const auto strata = strata_for(space);
    Rng rng = make_rng(seed, "search");
    std::size_t round = 0;
    std::size_t failed_draws = 0;
    while (tracker.evaluations < budget) {
        // Every fourth restart re-descends from the best pair so far.
        const bool intensify = round % 4 == 3 && tracker.best.has_value();
        const Stratum& stratum = strata[round % strata.size()];
        ++round;
        Point x;
        Point y;
        if (intensify) {
            x = tracker.best->x;
            y = tracker.best->y;
        } else {
            const auto xy = draw_pair(space, stratum, rng);
            if (!xy) {
                if (++failed_draws > 1000) break;
                continue;
            }
            x = xy->first;
            y = xy->second;
        }
        const auto start = spend(x, y);
        if (!start) break;
        double current = *start;
        double scale = kInitialScale;
        for (int step = 0; step < kLocalSteps && tracker.evaluations < budget; ++step) {
            const bool move_x = (step % 2) == 0;
            const Point nx = move_x ? space.perturb(rng, x, scale) : x;
            const Point ny = move_x ? y : space.perturb(rng, y, scale);
            const auto m = spend(nx, ny);
            if (m && *m < current) {
                current = *m;
                x = nx;
                y = ny;
                scale = kInitialScale;
            } else {
                scale = std::max(scale * 0.5, kMinScale);
            }
        }
    }
    return finish(space, pair, tracker, tol);
}

}  // namespace shiftfp
