#pragma once

#include <string>

#include "json.hpp"

#include "ccons/decision.hpp"
#include "ccons/matrix.hpp"
#include "ccons/simulator.hpp"

namespace ccons::io {

using nlohmann::json;

/// Matrix-set document:
///   {"n", "clusters": [[...]], "matrices": [{"name", "rows"}], "tolerances"?}
/// Structural problems raise ParseError; numeric ones keep their own codes
/// with the offending matrix name prefixed to the message.
MatrixSet matrix_set_from_json(const json& doc);
MatrixSet parse_matrix_set(const std::string& text);
json to_json(const MatrixSet& set);

json to_json(const Tolerances& tol);
json to_json(const AssumptionReport& report, const MatrixSet& set);
json to_json(const DecisionResult& result);
json to_json(const ConsensusProfile& profile);

/// {"seed": {"i", "j", "cluster"}, "prefix": [...], "cycle": [...]}, each step
/// {"matrix", "s", "s_prime"} with sorted 0-based vertex lists.
json to_json(const Witness& w);
Witness witness_from_json(const json& doc);
Witness parse_witness(const std::string& text);

json parse_json(const std::string& text);

}  // namespace ccons::io
