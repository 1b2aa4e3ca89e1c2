#pragma once

// JSON descriptors for bodies, fields, instances and problems, and JSON
// forms of the reports. Malformed input raises InputError.

#include <string>
#include <variant>

#include <json.hpp>

#include "powconc/bbl.hpp"
#include "powconc/concavity.hpp"
#include "powconc/convolve.hpp"
#include "powconc/extmeans.hpp"
#include "powconc/fields.hpp"
#include "powconc/geometry.hpp"
#include "powconc/optimize.hpp"

namespace powconc {

using json = nlohmann::ordered_json;

json load_json_file(const std::string& path);

/// Finite doubles as numbers; infinities as "inf" / "-inf".
json number_to_json(double v);
double number_from_json(const json& j);

ExtExponent ext_from_json(const json& j);
json ext_to_json(const ExtExponent& p);

ConvexBody body_from_json(const json& j);
json body_to_json(const ConvexBody& body);

using AnyField = std::variant<ScalarFieldPtr, SpaceTimeFieldPtr>;

AnyField field_from_json(const json& j);
ScalarFieldPtr scalar_field_from_json(const json& j);
SpaceTimeFieldPtr space_time_field_from_json(const json& j);

BBLInstance bbl_instance_from_json(const json& j);
json bbl_report_to_json(const BBLReport& r);

json concavity_report_to_json(const ConcavityReport& r);
json convolution_result_to_json(const ConvolutionResult& r);

/// {"objective": field, "feasible": body, "tolerance", "multistart", "seed"}.
/// A space-time objective is maximized over (x, t) with t the last coordinate.
MaxProblem max_problem_from_json(const json& j);
json max_result_to_json(const MaxResult& r);

}  // namespace powconc
