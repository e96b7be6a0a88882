#pragma once

#include <json.hpp>

#include "krs/hfuncs.hpp"
#include "krs/invariant.hpp"
#include "krs/oracle.hpp"
#include "krs/soliton.hpp"

namespace krs {

/// {"re": x, "im": y}
nlohmann::json complex_json(Complex z);

nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const SolitonResult& r);
nlohmann::json to_json(const McEstimate& e);
nlohmann::json to_json(const PhiBundle& b);
nlohmann::json to_json(const HomogeneousPolynomial& P);

}  // namespace krs
