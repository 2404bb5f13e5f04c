#include "shiftfp/solver.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "shiftfp/expression.hpp"
#include "shiftfp/seed.hpp"

namespace shiftfp {

std::string_view to_string(IterationVerdict v) noexcept {
    switch (v) {
        case IterationVerdict::Converged: return "converged";
        case IterationVerdict::MaxIterReached: return "max_iter_reached";
        case IterationVerdict::Diverged: return "diverged";
    }
    return "unknown";
}

std::string_view to_string(UniquenessVerdict v) noexcept {
    return v == UniquenessVerdict::Unique ? "unique" : "ambiguous";
}

IterationTrace picard(const MetricSpace& space, const SelfMap& map, Point x0, const PicardOptions& opts) {
    if (!(opts.tol_fix > 0.0) || opts.max_iter == 0) {
        throw std::invalid_argument("picard: need tol_fix > 0 and max_iter >= 1");
    }
    IterationTrace trace;
    // apply() rejects a non-member start before anything is recorded.
    Point x{space.canonical(x0.value)};
    Point next = apply(space, map, x);
    trace.iterates.push_back(x);

    for (std::size_t n = 0;; ++n) {
        const double r = space.distance(x, next);
        trace.residuals.push_back(r);
        if (r <= opts.tol_fix) {
            trace.verdict = IterationVerdict::Converged;
            break;
        }
        if (n == opts.max_iter) {
            trace.verdict = IterationVerdict::MaxIterReached;
            break;
        }
        // Step n: x_{n+1} = T x_n and u_n = d(x_{n+1}, x_n) = r.
        if (!trace.step_distances.empty() && r > trace.step_distances.back() + opts.monotone_tol) {
            ++trace.monotone_violations;
        }
        trace.step_distances.push_back(r);
        trace.iterates.push_back(next);
        x = next;
        if (r > opts.divergence_factor * trace.step_distances.front()) {
            trace.residuals.push_back(space.distance(x, apply(space, map, x)));
            trace.verdict = IterationVerdict::Diverged;
            break;
        }
        next = apply(space, map, x);
    }
    trace.residual = trace.residuals.back();
    return trace;
}

bool cauchy_check(const MetricSpace& space, const IterationTrace& trace, std::size_t window, double tol) {
    if (window == 0 || trace.iterates.size() < window + 1) {
        throw std::invalid_argument("cauchy_check: window must be >= 1 and the trace needs window + 1 iterates");
    }
    const std::size_t first = trace.iterates.size() - window;
    double worst = 0.0;
    for (std::size_t i = first; i < trace.iterates.size(); ++i) {
        for (std::size_t j = i + 1; j < trace.iterates.size(); ++j) {
            worst = std::max(worst, space.distance(trace.iterates[i], trace.iterates[j]));
        }
    }
    return worst <= tol;
}

UniquenessReport probe_uniqueness(const MetricSpace& space, const SelfMap& map, std::uint64_t seed,
                                  std::size_t n_starts, const PicardOptions& opts, double tol_unique) {
    if (n_starts < 2) {
        throw std::invalid_argument("probe_uniqueness: need at least 2 starts");
    }
    UniquenessReport rep;
    rep.starts = space.sample(derive_seed(seed, "uniqueness/starts"), n_starts);
    for (std::size_t i = 0; i < rep.starts.size(); ++i) {
        const auto trace = picard(space, map, rep.starts[i], opts);
        rep.limits.push_back(trace.last());
        rep.run_verdicts.push_back(trace.verdict);
        if (trace.verdict != IterationVerdict::Converged) rep.failed_runs.push_back(i);
    }
    for (std::size_t i = 0; i < rep.limits.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.limits.size(); ++j) {
            rep.max_pairwise_distance =
                std::max(rep.max_pairwise_distance, space.distance(rep.limits[i], rep.limits[j]));
        }
    }
    rep.verdict = rep.failed_runs.empty() && rep.max_pairwise_distance <= tol_unique ? UniquenessVerdict::Unique
                                                                                     : UniquenessVerdict::Ambiguous;
    return rep;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << "n,x_n,u_n,residual\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        out << n << ',' << format_double(trace.iterates[n].value) << ',';
        if (n < trace.step_distances.size()) out << format_double(trace.step_distances[n]);
        out << ',' << format_double(trace.residuals[n]) << '\n';
    }
}

}  // namespace shiftfp
