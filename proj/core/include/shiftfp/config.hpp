#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "shiftfp/conditions.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/pipeline.hpp"
#include "shiftfp/solver.hpp"

namespace shiftfp {

inline constexpr int kSchemaVersion = 1;

struct SolverSettings {
    std::optional<double> x0;
    PicardOptions picard;
};

/// A loaded configuration document. Missing sections stay empty; commands
/// decide which ones they need.
///
/// Document layout (all numbers may also be strings such as "3/125"):
///
///   { "schema_version": 1,
///     "name": "...", "description": "...",
///     "space":  {"kind": "interval", "lo": 0, "hi": 1}
///             | {"kind": "hybrid", "n_int": 50}
///             | {"kind": "finite", "points": [...]},
///     "map":    "t/2" | [piece, ...],
///     "pair":   {"psi": fn, "phi": fn}
///             | {"reduction": "banach", "k": 0.5}
///             | {"reduction": "khan", "psi": fn, "c": 0.5}
///             | {"reduction": "altering", "psi": fn, "varphi": fn},
///     "solver": {"x0": 4, "tol_fix": 1e-12, "max_iter": 10000},
///     "checks": {"seed": 0, "n_samples": ..., "tol": ..., "tol_eq": ..., "tol_ord": ...,
///                "grid_size": ..., "n_int": ..., "u_max": ..., "closure_samples": ...,
///                "search_budget": ..., "starts": ..., "tol_unique": ...},
///     "expected": {"fixed_point": 0 | null, "contraction_holds": true, "pair_conditions_hold": true} }
///
///   fn    = "expression in t" | [piece, ...]
///   piece = {"interval": {"lo": 0, "lo_closed": true, "hi": 1 | "+inf", "hi_closed": false}, "expr": "..."}
struct Config {
    std::string name;
    std::string description;
    SpacePtr space;
    std::optional<SelfMap> map;
    std::optional<ShiftingPair> pair;
    SolverSettings solver;
    CheckSettings checks;
    std::optional<Expectation> expected;
};

/// Throws ConfigError naming the offending field.
Config parse_config(const nlohmann::json& doc);

/// JSON syntax errors are reported as ConfigError with line and column.
Config parse_config_text(std::string_view text);

Config load_config_file(const std::filesystem::path& path);

/// Requires space, map and pair; x0 defaults to the first anchor point.
Instance to_instance(const Config& cfg);

nlohmann::json scalar_fn_to_json(const ScalarFn& f);
nlohmann::json map_to_json(const SelfMap& map);
nlohmann::json space_to_json(const MetricSpace& space);

/// Config document describing an instance; parse_config reads it back to an
/// equivalent instance. Throws std::invalid_argument for spaces without a
/// declaration.
nlohmann::json export_config(const Instance& inst, const CheckSettings& checks = {});

}  // namespace shiftfp
