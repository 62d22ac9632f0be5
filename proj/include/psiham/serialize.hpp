#pragma once

#include "psiham/algebra.hpp"
#include "psiham/problems.hpp"

#include <json.hpp>

namespace psiham {

// Series documents: term lists keyed by the exact exponent pair, one
// spatial block per term. Doubles round-trip bit-exactly through the
// shortest-representation encoder.
nlohmann::json to_json(const CylindricalSeries& s);
nlohmann::json to_json(const PlanarCoupledSeries& s);
nlohmann::json to_json(const HamSeries& s);
HamSeries ham_series_from_json(const nlohmann::json& j);

// Problem documents. Custom psi maps are not serializable (ParameterError).
nlohmann::json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const nlohmann::json& j);

}  // namespace psiham
