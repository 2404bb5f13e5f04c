#include "shiftfp/report_json.hpp"

#include <cmath>
#include <string>

namespace shiftfp {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nums(const std::vector<double>& vs) {
    json out = json::array();
    for (double v : vs) out.push_back(num(v));
    return out;
}

json points(const std::vector<Point>& ps) {
    json out = json::array();
    for (const Point& p : ps) out.push_back(num(p.value));
    return out;
}

}  // namespace

json to_json(const Witness& w) {
    return {{"clause", w.clause}, {"inputs", nums(w.inputs)}, {"values", nums(w.values)}, {"margin", num(w.margin)}};
}

json to_json(const ConditionReport& r) {
    json wit = json::array();
    for (const auto& w : r.witnesses) wit.push_back(to_json(w));
    return {{"verdict", std::string(to_string(r.verdict))},
            {"margin", num(r.margin)},
            {"samples_used", r.samples_used},
            {"violations", r.violations},
            {"witnesses", std::move(wit)}};
}

json to_json(const ContractionWitness& w) {
    return {{"x", num(w.x.value)},   {"y", num(w.y.value)},     {"d_xy", num(w.d_xy)},
            {"tx", num(w.tx)},       {"ty", num(w.ty)},         {"d_txty", num(w.d_txty)},
            {"psi", num(w.psi)},     {"phi", num(w.phi)},       {"margin", num(w.margin)}};
}

json to_json(const ContractionReport& r) {
    return {{"verdict", std::string(to_string(r.verdict))},
            {"worst_margin", num(r.worst_margin)},
            {"diagonal_margin", num(r.diagonal_margin)},
            {"samples_used", r.samples_used},
            {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
}

json to_json(const ClosureReport& r) {
    json wit = json::array();
    for (const auto& w : r.witnesses) {
        wit.push_back({{"x", num(w.x.value)}, {"image", num(w.image)}, {"reason", w.reason}});
    }
    return {{"ok", r.ok()}, {"checked", r.checked}, {"violations", r.violations}, {"witnesses", std::move(wit)}};
}

json to_json(const AxiomReport& r) {
    json out = {{"ok", r.ok()},
                {"pairs_checked", r.pairs_checked},
                {"triples_checked", r.triples_checked},
                {"identity_violations", r.identity_violations},
                {"negativity_violations", r.negativity_violations},
                {"symmetry_violations", r.symmetry_violations},
                {"triangle_violations", r.triangle_violations},
                {"worst_triangle", nullptr}};
    if (r.worst_triangle) {
        const auto& t = *r.worst_triangle;
        out["worst_triangle"] = {{"x", num(t.x.value)},   {"y", num(t.y.value)},   {"z", num(t.z.value)},
                                 {"d_xy", num(t.d_xy)},   {"d_yz", num(t.d_yz)},   {"d_xz", num(t.d_xz)},
                                 {"excess", num(t.excess)}};
    }
    return out;
}

json trace_summary(const IterationTrace& t) {
    return {{"verdict", std::string(to_string(t.verdict))},
            {"iterations", t.iterations()},
            {"fixed_point", num(t.last().value)},
            {"residual", num(t.residual)},
            {"monotone_violations", t.monotone_violations}};
}

json to_json(const UniquenessReport& r) {
    json verdicts = json::array();
    for (auto v : r.run_verdicts) verdicts.push_back(std::string(to_string(v)));
    return {{"verdict", std::string(to_string(r.verdict))},
            {"starts", points(r.starts)},
            {"limits", points(r.limits)},
            {"run_verdicts", std::move(verdicts)},
            {"failed_runs", r.failed_runs},
            {"max_pairwise_distance", num(r.max_pairwise_distance)}};
}

json to_json(const CheckSettings& s) {
    return {{"seed", s.seed},
            {"n_samples", s.n_samples},
            {"tol", num(s.tol)},
            {"tol_eq", num(s.tol_eq)},
            {"tol_ord", num(s.tol_ord)},
            {"grid_size", s.grid_size},
            {"n_int", s.n_int},
            {"u_max", num(s.range())},
            {"closure_samples", s.closure_samples},
            {"search_budget", s.search_budget},
            {"starts", s.starts},
            {"tol_unique", num(s.tol_unique)}};
}

json to_json(const PicardOptions& o) {
    return {{"tol_fix", num(o.tol_fix)},
            {"max_iter", o.max_iter},
            {"monotone_tol", num(o.monotone_tol)},
            {"divergence_factor", num(o.divergence_factor)}};
}

json to_json(const PipelineResult& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"met", c.met}, {"detail", c.detail}});
    json out = {{"all_met", r.all_met()}, {"expectations", std::move(checks)}, {"closure", to_json(r.closure)}};
    if (!r.closure.ok()) return out;
    out["condition_i"] = to_json(r.condition_i);
    out["condition_ii"] = to_json(r.condition_ii);
    out["contraction"] = to_json(r.contraction);
    out["solve"] = trace_summary(r.trace);
    out["uniqueness"] = to_json(r.uniqueness);
    return out;
}

}  // namespace shiftfp
