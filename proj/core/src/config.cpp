#include "shiftfp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "shiftfp/error.hpp"
#include "shiftfp/expression.hpp"

namespace shiftfp {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(join(path, key), "unknown field");
        }
    }
}

const json& field(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(join(path, key), "missing required field");
    return *it;
}

/// JSON number or a constant expression string like "3/125". Infinite
/// values are accepted only when allow_infinite is set ("+inf", "-inf").
double number(const json& j, const std::string& path, bool allow_infinite = false) {
    if (j.is_number()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) throw ConfigError(path, "number must be finite");
        return v;
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "+inf" || s == "inf" || s == "-inf") {
            if (!allow_infinite) throw ConfigError(path, "infinite value not allowed here");
            return s == "-inf" ? -INFINITY : INFINITY;
        }
        try {
            return parse_constant(s);
        } catch (const std::exception& e) {
            throw ConfigError(path, std::string("bad numeric constant: ") + e.what());
        }
    }
    throw ConfigError(path, "expected a number or a constant string");
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

std::size_t count(const json& j, const std::string& path, std::size_t min_value) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(path, "expected an integer");
    if (j.is_number_integer() && j.get<std::int64_t>() < static_cast<std::int64_t>(min_value)) {
        throw ConfigError(path, "must be at least " + std::to_string(min_value));
    }
    return j.get<std::size_t>();
}

double positive(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (!(v > 0.0)) throw ConfigError(path, "must be positive");
    return v;
}

Expression expression(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected an expression string");
    try {
        return parse_expr(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(path, e.what());
    }
}

Interval interval(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"lo", "lo_closed", "hi", "hi_closed"});
    Interval iv;
    iv.lo = number(field(j, path, "lo"), join(path, "lo"), true);
    iv.lo_closed = boolean(field(j, path, "lo_closed"), join(path, "lo_closed"));
    iv.hi = number(field(j, path, "hi"), join(path, "hi"), true);
    if (std::isinf(iv.hi) && !j.contains("hi_closed")) {
        iv.hi_closed = false;
    } else {
        iv.hi_closed = boolean(field(j, path, "hi_closed"), join(path, "hi_closed"));
    }
    return iv;
}

std::vector<Piece> pieces(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty list of pieces");
    std::vector<Piece> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = index(path, i);
        require_object(j[i], p);
        reject_unknown(j[i], p, {"interval", "expr"});
        out.push_back({interval(field(j[i], p, "interval"), join(p, "interval")),
                       expression(field(j[i], p, "expr"), join(p, "expr"))});
    }
    return out;
}

ScalarFn scalar_fn(const json& j, const std::string& path) {
    if (j.is_string()) return ScalarFn::single(expression(j, path));
    try {
        return ScalarFn(pieces(j, path));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

SelfMap self_map(const json& j, const std::string& path) {
    if (j.is_string()) {
        auto e = expression(j, path);
        return SelfMap::single(e, "Tt = " + j.get<std::string>());
    }
    const json* list = &j;
    std::string list_path = path;
    std::string description = "piecewise map";
    if (j.is_object()) {
        reject_unknown(j, path, {"pieces", "description"});
        list = &field(j, path, "pieces");
        list_path = join(path, "pieces");
        if (j.contains("description")) {
            if (!j["description"].is_string()) throw ConfigError(join(path, "description"), "expected a string");
            description = j["description"].get<std::string>();
        }
    }
    try {
        return SelfMap(PiecewiseRule(pieces(*list, list_path)), description);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(list_path, e.what());
    }
}

SpacePtr space(const json& j, const std::string& path, int default_n_int) {
    require_object(j, path);
    const json& kind_j = field(j, path, "kind");
    if (!kind_j.is_string()) throw ConfigError(join(path, "kind"), "expected a string");
    const auto kind = kind_j.get<std::string>();
    SpaceDecl decl;
    decl.kind = kind;
    if (kind == "interval") {
        reject_unknown(j, path, {"kind", "lo", "hi"});
        decl.lo = number(field(j, path, "lo"), join(path, "lo"));
        decl.hi = number(field(j, path, "hi"), join(path, "hi"));
        if (!(decl.lo < decl.hi)) throw ConfigError(path, "interval needs lo < hi");
    } else if (kind == "hybrid") {
        reject_unknown(j, path, {"kind", "n_int"});
        decl.n_int = j.contains("n_int") ? static_cast<int>(count(j["n_int"], join(path, "n_int"), 2))
                                         : default_n_int;
    } else if (kind == "finite") {
        reject_unknown(j, path, {"kind", "points"});
        const json& pts = field(j, path, "points");
        if (!pts.is_array() || pts.empty()) throw ConfigError(join(path, "points"), "expected a nonempty list");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            decl.points.push_back(number(pts[i], index(join(path, "points"), i)));
        }
    } else {
        throw ConfigError(join(path, "kind"), "unknown space kind '" + kind + "' (interval, hybrid, finite)");
    }
    return make_space(decl);
}

ShiftingPair pair(const json& j, const std::string& path) {
    require_object(j, path);
    try {
        if (!j.contains("reduction")) {
            reject_unknown(j, path, {"psi", "phi"});
            return {scalar_fn(field(j, path, "psi"), join(path, "psi")),
                    scalar_fn(field(j, path, "phi"), join(path, "phi"))};
        }
        const json& r = j["reduction"];
        if (!r.is_string()) throw ConfigError(join(path, "reduction"), "expected a string");
        const auto kind = r.get<std::string>();
        if (kind == "banach") {
            reject_unknown(j, path, {"reduction", "k"});
            return from_banach(number(field(j, path, "k"), join(path, "k")));
        }
        if (kind == "khan") {
            reject_unknown(j, path, {"reduction", "psi", "c"});
            return from_khan(scalar_fn(field(j, path, "psi"), join(path, "psi")),
                             number(field(j, path, "c"), join(path, "c")));
        }
        if (kind == "altering") {
            reject_unknown(j, path, {"reduction", "psi", "varphi"});
            return from_altering_pair(scalar_fn(field(j, path, "psi"), join(path, "psi")),
                                      scalar_fn(field(j, path, "varphi"), join(path, "varphi")));
        }
        throw ConfigError(join(path, "reduction"), "unknown reduction '" + kind + "' (banach, khan, altering)");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
}

void solver_settings(const json& j, const std::string& path, SolverSettings& out) {
    require_object(j, path);
    reject_unknown(j, path, {"x0", "tol_fix", "max_iter"});
    if (j.contains("x0")) out.x0 = number(j["x0"], join(path, "x0"));
    if (j.contains("tol_fix")) out.picard.tol_fix = positive(j["tol_fix"], join(path, "tol_fix"));
    if (j.contains("max_iter")) out.picard.max_iter = count(j["max_iter"], join(path, "max_iter"), 1);
}

void check_settings(const json& j, const std::string& path, CheckSettings& out) {
    require_object(j, path);
    reject_unknown(j, path,
                   {"seed", "n_samples", "tol", "tol_eq", "tol_ord", "grid_size", "n_int", "u_max", "closure_samples",
                    "search_budget", "starts", "tol_unique"});
    if (j.contains("seed")) {
        const json& s = j["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            throw ConfigError(join(path, "seed"), "expected a nonnegative integer");
        }
        out.seed = s.get<std::uint64_t>();
    }
    if (j.contains("n_samples")) out.n_samples = count(j["n_samples"], join(path, "n_samples"), 1);
    if (j.contains("tol")) out.tol = positive(j["tol"], join(path, "tol"));
    if (j.contains("tol_eq")) out.tol_eq = positive(j["tol_eq"], join(path, "tol_eq"));
    if (j.contains("tol_ord")) out.tol_ord = positive(j["tol_ord"], join(path, "tol_ord"));
    if (j.contains("grid_size")) out.grid_size = count(j["grid_size"], join(path, "grid_size"), 1);
    if (j.contains("n_int")) out.n_int = static_cast<int>(count(j["n_int"], join(path, "n_int"), 2));
    if (j.contains("u_max")) out.u_max = positive(j["u_max"], join(path, "u_max"));
    if (j.contains("closure_samples")) out.closure_samples = count(j["closure_samples"], join(path, "closure_samples"), 1);
    if (j.contains("search_budget")) out.search_budget = count(j["search_budget"], join(path, "search_budget"), 1);
    if (j.contains("starts")) out.starts = count(j["starts"], join(path, "starts"), 2);
    if (j.contains("tol_unique")) out.tol_unique = positive(j["tol_unique"], join(path, "tol_unique"));
}

Expectation expectation(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"fixed_point", "contraction_holds", "pair_conditions_hold"});
    Expectation e;
    if (j.contains("fixed_point") && !j["fixed_point"].is_null()) {
        e.fixed_point = number(j["fixed_point"], join(path, "fixed_point"));
    }
    if (j.contains("contraction_holds")) {
        e.contraction_holds = boolean(j["contraction_holds"], join(path, "contraction_holds"));
    }
    if (j.contains("pair_conditions_hold")) {
        e.pair_conditions_hold = boolean(j["pair_conditions_hold"], join(path, "pair_conditions_hold"));
    }
    return e;
}

std::string text_field(const json& j, const std::string& key) {
    if (!j.contains(key)) return {};
    if (!j[key].is_string()) throw ConfigError(key, "expected a string");
    return j[key].get<std::string>();
}

json endpoint(double v) {
    if (v == INFINITY) return "+inf";
    if (v == -INFINITY) return "-inf";
    return v;
}

json pieces_to_json(const std::vector<Piece>& ps) {
    json out = json::array();
    for (const auto& p : ps) {
        json iv = {{"lo", endpoint(p.interval.lo)},
                   {"lo_closed", p.interval.lo_closed},
                   {"hi", endpoint(p.interval.hi)},
                   {"hi_closed", p.interval.hi_closed}};
        out.push_back({{"interval", std::move(iv)}, {"expr", p.expr.to_string()}});
    }
    return out;
}

}  // namespace

Config parse_config(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "",
                   {"schema_version", "name", "description", "space", "map", "pair", "solver", "checks", "expected"});
    if (doc.contains("schema_version")) {
        const json& v = doc["schema_version"];
        if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
            throw ConfigError("schema_version", "unsupported schema version (expected 1)");
        }
    }
    Config cfg;
    cfg.name = text_field(doc, "name");
    cfg.description = text_field(doc, "description");
    // Checks first: the hybrid space takes its default N_int from them.
    if (doc.contains("checks")) check_settings(doc["checks"], "checks", cfg.checks);
    if (doc.contains("solver")) solver_settings(doc["solver"], "solver", cfg.solver);
    if (doc.contains("space")) cfg.space = space(doc["space"], "space", cfg.checks.n_int);
    if (doc.contains("map")) cfg.map = self_map(doc["map"], "map");
    if (doc.contains("pair")) cfg.pair = pair(doc["pair"], "pair");
    if (doc.contains("expected")) cfg.expected = expectation(doc["expected"], "expected");
    return cfg;
}

Config parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("", "JSON syntax error at line " + std::to_string(line) + ", column " +
                                  std::to_string(col) + ": " + e.what());
    }
    return parse_config(doc);
}

Config load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Instance to_instance(const Config& cfg) {
    if (!cfg.space) throw ConfigError("space", "missing required section");
    if (!cfg.map) throw ConfigError("map", "missing required section");
    if (!cfg.pair) throw ConfigError("pair", "missing required section");
    Point x0 = cfg.solver.x0 ? Point{*cfg.solver.x0} : cfg.space->anchor_points().front();
    return Instance{cfg.name.empty() ? "config" : cfg.name,
                    cfg.description,
                    cfg.space,
                    *cfg.map,
                    *cfg.pair,
                    cfg.expected.value_or(Expectation{}),
                    x0};
}

json scalar_fn_to_json(const ScalarFn& f) { return pieces_to_json(f.pieces()); }

json map_to_json(const SelfMap& map) {
    return {{"description", map.description()}, {"pieces", pieces_to_json(map.rule().pieces())}};
}

json space_to_json(const MetricSpace& sp) {
    const auto decl = sp.declaration();
    if (!decl) throw std::invalid_argument("space '" + sp.description() + "' has no declaration");
    if (decl->kind == "interval") return {{"kind", "interval"}, {"lo", decl->lo}, {"hi", decl->hi}};
    if (decl->kind == "hybrid") return {{"kind", "hybrid"}, {"n_int", decl->n_int}};
    return {{"kind", "finite"}, {"points", decl->points}};
}

json export_config(const Instance& inst, const CheckSettings& cs) {
    json checks = {{"seed", cs.seed},
                   {"n_samples", cs.n_samples},
                   {"tol", cs.tol},
                   {"tol_eq", cs.tol_eq},
                   {"tol_ord", cs.tol_ord},
                   {"grid_size", cs.grid_size},
                   {"n_int", cs.n_int},
                   {"closure_samples", cs.closure_samples},
                   {"search_budget", cs.search_budget},
                   {"starts", cs.starts},
                   {"tol_unique", cs.tol_unique}};
    if (cs.u_max) checks["u_max"] = *cs.u_max;
    json expected = {{"fixed_point", nullptr},
                     {"contraction_holds", inst.expected.contraction_holds},
                     {"pair_conditions_hold", inst.expected.pair_conditions_hold}};
    if (inst.expected.fixed_point) expected["fixed_point"] = *inst.expected.fixed_point;
    return {{"schema_version", kSchemaVersion},
            {"name", inst.name},
            {"description", inst.description},
            {"space", space_to_json(*inst.space)},
            {"map", map_to_json(inst.map)},
            {"pair", {{"psi", scalar_fn_to_json(inst.pair.psi)}, {"phi", scalar_fn_to_json(inst.pair.phi)}}},
            {"solver", {{"x0", inst.x0.value}}},
            {"checks", std::move(checks)},
            {"expected", std::move(expected)}};
}

}  // namespace shiftfp
