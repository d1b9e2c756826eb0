#pragma once

#include <string>

#include <json.hpp>

#include "coherence/states.hpp"

namespace coherence {

// States serialize either as {"bloch":[rx,ry,rz]} or
// {"matrix":{"dim":d,"re":[...],"im":[...]}} (row-major).
nlohmann::json state_to_json(const DensityOperator& rho);
nlohmann::json bloch_to_json(const BlochVector& b);

DensityOperator state_from_json(const nlohmann::json& j);
BlochVector bloch_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace coherence
