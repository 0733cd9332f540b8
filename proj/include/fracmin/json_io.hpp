#pragma once

#include <string>

#include <json.hpp>

#include "fracmin/ext_real.hpp"
#include "fracmin/interval.hpp"
#include "fracmin/minimal.hpp"
#include "fracmin/step_function.hpp"
#include "fracmin/weights.hpp"

namespace fracmin {

using json = nlohmann::json;

// Extended reals serialize as plain numbers, with the string "inf" for
// +infinity.  Schemas:
//   step function: {"breakpoints": [...], "values": [...],
//                   "left_tail": v, "right_tail": v}
//   weight pair:   {"U": <stepfn>, "V": <stepfn>}
json ext_to_json(ExtReal v);
ExtReal ext_from_json(const json& j, const std::string& field);

json to_json(const StepFunction& f);
StepFunction step_function_from_json(const json& j);

json to_json(const WeightPair& pair);
WeightPair weight_pair_from_json(const json& j);

json to_json(const Interval& I);
json to_json(const Exponents& e);
json to_json(const RatioReport& r);

// 17 significant digits: enough for exact double round-trips.
std::string format17(double x);

}  // namespace fracmin
