#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftfp/conditions.hpp"
#include "shiftfp/metric.hpp"
#include "shiftfp/self_map.hpp"

namespace shiftfp {

/// What a full pipeline run on an instance is expected to find.
struct Expectation {
    std::optional<double> fixed_point;
    bool contraction_holds = true;
    bool pair_conditions_hold = true;
};

struct Instance {
    std::string name;
    std::string description;
    SpacePtr space;
    SelfMap map;
    ShiftingPair pair;
    Expectation expected;
    Point x0;
};

namespace corpus {

/// psi(t) = ln(1/12 + 5/12 t) on [0,1], ln(1/12 + 4/12 t) on (1, inf).
ScalarFn example_psi();
/// phi(t) = ln(1/12 + 3/12 t) on [0,1], ln(1/12 + 2/12 t) on (1, inf).
ScalarFn example_phi();
/// T x = x/5 on [0,1), 3/125 on [1, inf): the integer branch includes x = 1.
SelfMap example_map();
/// (ln((1+2t)/2), ln((1+t)/2)).
ShiftingPair ln_pair();

}  // namespace corpus

/// Affine contraction T x = k x + (1 - k) c on [0, 2c] with the Banach pair (t, k t).
/// The fixed point is c.
Instance banach_k(double k, double center = 2.0);

/// Registered names in a fixed order.
std::vector<std::string> list_instances();

/// Looks up a registered instance. "banach-k" takes an optional parameter
/// written "banach-k:0.3" (default k = 0.5). Throws std::out_of_range for an
/// unknown name.
Instance instance(std::string_view name);

}  // namespace shiftfp
