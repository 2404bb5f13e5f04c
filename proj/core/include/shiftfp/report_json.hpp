#pragma once

#include <nlohmann/json.hpp>

#include "shiftfp/conditions.hpp"
#include "shiftfp/metric.hpp"
#include "shiftfp/pipeline.hpp"
#include "shiftfp/self_map.hpp"
#include "shiftfp/solver.hpp"
#include "shiftfp/verifier.hpp"

// JSON views of the reports. Field names are part of the CLI contract.
// Non-finite numbers are written as null.
namespace shiftfp {

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const ContractionWitness& w);
nlohmann::json to_json(const ContractionReport& r);
nlohmann::json to_json(const ClosureReport& r);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const UniquenessReport& r);
nlohmann::json to_json(const CheckSettings& s);
nlohmann::json to_json(const PicardOptions& o);
nlohmann::json to_json(const PipelineResult& r);

/// Summary without the iterate list: verdict, iterations, fixed point, residual.
nlohmann::json trace_summary(const IterationTrace& t);

}  // namespace shiftfp
