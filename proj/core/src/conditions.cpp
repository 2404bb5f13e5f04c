#include "shiftfp/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "shiftfp/seed.hpp"

namespace shiftfp {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool ConditionReport::failed_clause(std::string_view clause) const {
    if (verdict == Verdict::Pass) return false;
    return std::any_of(witnesses.begin(), witnesses.end(), [&](const Witness& w) { return w.clause == clause; });
}

namespace {

constexpr std::size_t kMaxWitnesses = 16;

/// Keeps the lowest-margin witnesses seen so far.
class WorstK {
public:
    explicit WorstK(std::size_t k) : k_(k) {}

    void offer(Witness w) {
        if (kept_.size() < k_) {
            kept_.push_back(std::move(w));
            return;
        }
        auto worst_kept = std::max_element(kept_.begin(), kept_.end(),
                                           [](const Witness& a, const Witness& b) { return a.margin < b.margin; });
        if (w.margin < worst_kept->margin) *worst_kept = std::move(w);
    }

    std::vector<Witness> take() && {
        std::stable_sort(kept_.begin(), kept_.end(),
                         [](const Witness& a, const Witness& b) { return a.margin < b.margin; });
        return std::move(kept_);
    }

private:
    std::size_t k_;
    std::vector<Witness> kept_;
};

std::vector<double> merged_breakpoints(const ShiftingPair& pair) {
    std::vector<double> out = pair.psi.breakpoints();
    out.insert(out.end(), pair.phi.breakpoints().begin(), pair.phi.breakpoints().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void add_breakpoint_neighbourhood(std::vector<double>& pts, const std::vector<double>& breaks, double lo,
                                  double hi) {
    for (double b : breaks) {
        for (double p : {b - defaults::kBreakpointOffset, b, b + defaults::kBreakpointOffset}) {
            if (p >= lo && p <= hi) pts.push_back(p);
        }
    }
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ConditionReport check_condition_i(const ShiftingPair& pair, std::uint64_t seed, std::size_t n, double tol_eq,
                                  double tol_ord, double u_max) {
    if (n == 0 || !(tol_eq > 0.0) || !(tol_ord > 0.0) || !(u_max > 0.0)) {
        throw std::invalid_argument("check_condition_i: need n >= 1, positive tolerances and u_max > 0");
    }
    ConditionReport rep;
    WorstK violators(kMaxWitnesses);
    std::optional<Witness> tightest;
    rep.margin = std::numeric_limits<double>::infinity();

    auto visit = [&](double u, double psi_u, double v, double phi_v) {
        ++rep.samples_used;
        if (!(u > v + tol_ord)) return;  // (i) only constrains pairs with u > v
        const double slack = psi_u - phi_v + tol_eq;
        if (slack <= 0.0) {
            ++rep.violations;
            violators.offer({"i", {u, v}, {psi_u, phi_v}, slack});
        }
        if (slack < rep.margin) {
            rep.margin = slack;
            tightest = Witness{"i", {u, v}, {psi_u, phi_v}, slack};
        }
    };

    // Deterministic grid: every ordered pair.
    std::vector<double> grid;
    for (std::size_t i = 0; i < defaults::kConditionIGrid; ++i) {
        grid.push_back(u_max * static_cast<double>(i) / static_cast<double>(defaults::kConditionIGrid - 1));
    }
    add_breakpoint_neighbourhood(grid, merged_breakpoints(pair), 0.0, u_max);
    sort_unique(grid);
    std::vector<double> psi_grid;
    std::vector<double> phi_grid;
    for (double g : grid) {
        psi_grid.push_back(pair.psi.eval(g));
        phi_grid.push_back(pair.phi.eval(g));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) visit(grid[i], psi_grid[i], grid[j], phi_grid[j]);
    }

    Rng rng = make_rng(seed, "condition_i");
    std::uniform_real_distribution<double> unif(0.0, u_max);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = unif(rng);
        const double v = unif(rng);
        visit(u, pair.psi.eval(u), v, pair.phi.eval(v));
    }

    if (rep.violations > 0) {
        rep.verdict = Verdict::Violated;
        rep.witnesses = std::move(violators).take();
    } else {
        rep.verdict = Verdict::Pass;
        if (tightest) rep.witnesses.push_back(*tightest);
    }
    return rep;
}

std::vector<double> condition_ii_grid(const ShiftingPair& pair, double w_max, std::size_t count) {
    if (!(w_max > 0.0) || count == 0) {
        throw std::invalid_argument("condition_ii_grid: need w_max > 0 and count >= 1");
    }
    std::vector<double> grid;
    grid.reserve(count + 16);
    for (std::size_t i = 1; i <= count; ++i) {
        grid.push_back(w_max * static_cast<double>(i) / static_cast<double>(count));
    }
    add_breakpoint_neighbourhood(grid, merged_breakpoints(pair), std::numeric_limits<double>::min(), w_max);
    sort_unique(grid);
    return grid;
}

ConditionReport check_condition_ii(const ShiftingPair& pair, std::span<const double> grid, double tol) {
    if (grid.empty() || !(tol > 0.0)) {
        throw std::invalid_argument("check_condition_ii: need a nonempty grid and tol > 0");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw std::invalid_argument("check_condition_ii: grid must be strictly ascending in (0, inf)");
        }
    }
    for (double b : merged_breakpoints(pair)) {
        for (double p : {b - defaults::kBreakpointOffset, b, b + defaults::kBreakpointOffset}) {
            if (p > 0.0 && p <= grid.back() && !std::binary_search(grid.begin(), grid.end(), p)) {
                throw std::invalid_argument("check_condition_ii: grid misses breakpoint neighbourhood point " +
                                            format_double(p));
            }
        }
    }

    ConditionReport rep;
    WorstK failures(kMaxWitnesses);
    std::optional<Witness> tightest;
    rep.margin = std::numeric_limits<double>::infinity();
    for (double w : grid) {
        const auto psi_lim = pair.psi.limit_values(w);
        const auto phi_lim = pair.phi.limit_values(w);
        const double lo_psi = psi_lim.front();
        const double hi_phi = phi_lim.back();
        const double gap = lo_psi - hi_phi;
        const double slack = gap - tol;
        ++rep.samples_used;
        Witness wit{"ii", {w}, {lo_psi, hi_phi, gap}, slack};
        if (slack <= 0.0) {
            ++rep.violations;
            failures.offer(wit);
        }
        if (slack < rep.margin) {
            rep.margin = slack;
            tightest = std::move(wit);
        }
    }
    if (rep.violations > 0) {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses = std::move(failures).take();
    } else {
        rep.verdict = Verdict::Pass;
        if (tightest) rep.witnesses.push_back(*tightest);
    }
    return rep;
}

ConditionReport check_altering(const ScalarFn& psi, std::uint64_t seed, std::size_t n, double tol, double t_max) {
    if (n == 0 || !(tol > 0.0) || !(t_max > 0.0)) {
        throw std::invalid_argument("check_altering: need n >= 1, tol > 0 and t_max > 0");
    }
    ConditionReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    // Worst witness per clause a..d.
    std::optional<Witness> worst[4];
    std::size_t failures[4] = {0, 0, 0, 0};
    auto record = [&](int clause, bool failed, Witness w) {
        rep.margin = std::min(rep.margin, w.margin);
        if (failed) ++failures[clause];
        if (!worst[clause] || w.margin < worst[clause]->margin) worst[clause] = std::move(w);
    };

    const double psi0 = psi.eval(0.0);
    ++rep.samples_used;
    record(0, std::fabs(psi0) > tol, {"a", {0.0}, {psi0}, tol - std::fabs(psi0)});

    std::vector<double> pts;
    Rng rng = make_rng(seed, "altering");
    std::uniform_real_distribution<double> unif(0.0, t_max);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(unif(rng));
    add_breakpoint_neighbourhood(pts, psi.breakpoints(), 0.0, t_max);
    pts.push_back(0.0);
    pts.push_back(t_max);
    sort_unique(pts);

    std::vector<double> vals;
    vals.reserve(pts.size());
    for (double t : pts) vals.push_back(psi.eval(t));
    rep.samples_used += pts.size();

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] > tol) {
            record(1, !(vals[i] > tol), {"b", {pts[i]}, {vals[i]}, vals[i] - tol});
        }
        if (i > 0) {
            const double rise = vals[i] - vals[i - 1];
            record(2, rise < -tol, {"c", {pts[i - 1], pts[i]}, {vals[i - 1], vals[i]}, rise + tol});
        }
    }
    for (double b : psi.breakpoints()) {
        const auto lims = psi.limit_values(b);
        const double spread = lims.back() - lims.front();
        record(3, spread > tol, {"d", {b}, lims, tol - spread});
    }

    rep.violations = failures[0] + failures[1] + failures[2] + failures[3];
    if (rep.violations > 0) {
        rep.verdict = Verdict::Violated;
        for (int c = 0; c < 4; ++c) {
            if (failures[c] > 0) rep.witnesses.push_back(*worst[c]);
        }
    } else {
        rep.verdict = Verdict::Pass;
        const Witness* tightest = nullptr;
        for (const auto& w : worst) {
            if (w && (tightest == nullptr || w->margin < tightest->margin)) tightest = &*w;
        }
        if (tightest != nullptr) rep.witnesses.push_back(*tightest);
    }
    return rep;
}

ShiftingPair from_banach(double k) {
    if (!(k >= 0.0 && k < 1.0)) {
        throw std::invalid_argument("from_banach: k must lie in [0, 1), got " + format_double(k));
    }
    return {ScalarFn::identity(), ScalarFn::identity().scaled(k)};
}

namespace {

void require_altering(const ScalarFn& f, const char* who, const char* name) {
    const auto rep = check_altering(f, 0, 10000);
    if (!rep.passed()) {
        std::string clauses;
        for (const auto& w : rep.witnesses) clauses += (clauses.empty() ? "" : ",") + w.clause;
        throw std::invalid_argument(std::string(who) + ": " + name +
                                    " is not an altering distance function (failed clauses: " + clauses + ")");
    }
}

}  // namespace

ShiftingPair from_khan(const ScalarFn& psi, double c) {
    if (!(c >= 0.0 && c < 1.0)) {
        throw std::invalid_argument("from_khan: c must lie in [0, 1), got " + format_double(c));
    }
    require_altering(psi, "from_khan", "psi");
    return {psi, psi.scaled(c)};
}

ShiftingPair from_altering_pair(const ScalarFn& psi, const ScalarFn& varphi) {
    require_altering(psi, "from_altering_pair", "psi");
    require_altering(varphi, "from_altering_pair", "varphi");
    return {psi, difference(psi, varphi)};
}

}  // namespace shiftfp
