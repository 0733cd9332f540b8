#include "fracmin/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace fracmin {

namespace {

const json& require(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains(field))
        throw json::other_error::create(502, "missing field '" + field + "'", &j);
    return j.at(field);
}

}  // namespace

json ext_to_json(ExtReal v) {
    if (v.is_inf()) return json("inf");
    return json(v.value());
}

ExtReal ext_from_json(const json& j, const std::string& field) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ExtReal::inf();
        throw json::type_error::create(302, "field '" + field + "': only \"inf\" is accepted as a string value", &j);
    }
    if (!j.is_number())
        throw json::type_error::create(302, "field '" + field + "' must be a number or \"inf\"", &j);
    return ExtReal(j.get<double>());  // throws invalid_argument when negative or NaN
}

json to_json(const StepFunction& f) {
    json j;
    j["breakpoints"] = f.breakpoints();
    json vals = json::array();
    for (ExtReal v : f.values()) vals.push_back(ext_to_json(v));
    j["values"] = vals;
    j["left_tail"] = ext_to_json(f.left_tail());
    j["right_tail"] = ext_to_json(f.right_tail());
    return j;
}

StepFunction step_function_from_json(const json& j) {
    const json& bj = require(j, "breakpoints");
    const json& vj = require(j, "values");
    if (!bj.is_array())
        throw json::type_error::create(302, "field 'breakpoints' must be an array", &bj);
    if (!vj.is_array())
        throw json::type_error::create(302, "field 'values' must be an array", &vj);

    std::vector<double> bs;
    bs.reserve(bj.size());
    for (const json& x : bj) {
        if (!x.is_number())
            throw json::type_error::create(302, "field 'breakpoints' must contain numbers", &x);
        bs.push_back(x.get<double>());
    }
    std::vector<ExtReal> vals;
    vals.reserve(vj.size());
    for (const json& x : vj) vals.push_back(ext_from_json(x, "values"));

    return StepFunction(std::move(bs), std::move(vals),
                        ext_from_json(require(j, "left_tail"), "left_tail"),
                        ext_from_json(require(j, "right_tail"), "right_tail"));
}

json to_json(const WeightPair& pair) {
    return json{{"U", to_json(pair.U)}, {"V", to_json(pair.V)}};
}

WeightPair weight_pair_from_json(const json& j) {
    return WeightPair(step_function_from_json(require(j, "U")),
                      step_function_from_json(require(j, "V")));
}

json to_json(const Interval& I) { return json{{"a", I.a}, {"b", I.b}}; }

json to_json(const Exponents& e) {
    return json{{"mu", e.mu}, {"p", e.p}, {"q", e.q}};
}

json to_json(const RatioReport& r) {
    json j;
    j["ratio"] = ext_to_json(r.ratio);
    if (std::isfinite(r.log_ratio))
        j["log_ratio"] = r.log_ratio;
    else
        j["log_ratio"] = r.log_ratio > 0 ? "inf" : "-inf";
    j["witness"] = to_json(r.witness);
    j["params"] = to_json(r.params);
    j["kind"] = to_string(r.kind);
    if (r.kind == ClassKind::WpqEta) j["eta"] = r.eta;
    j["converged"] = r.converged;
    j["cells"] = r.cells;
    return j;
}

std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace fracmin
