#pragma once

// JSON forms of the core types. Rationals are always "p/q" strings.

#include <json.hpp>

#include "toreq/constants.hpp"
#include "toreq/discrepancy.hpp"
#include "toreq/laurent.hpp"
#include "toreq/polytope.hpp"
#include "toreq/torus.hpp"

namespace toreq {

using Json = nlohmann::ordered_json;

Json rational_vector_json(const RVec& v);
RVec rational_vector_from_json(const Json& j);

/// {"angles": ["1/5", "2/5"], "order": 5}
Json torsion_json(const TorsionPoint& omega);
TorsionPoint torsion_from_json(const Json& j);

/// {"vertices": [["0","0"], ...]}; facets are included on output only.
Json polytope_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

/// {"d": 2, "terms": [{"exp": [1, 0], "re": "1", "im": "0"}, ...]}
Json polynomial_json(const LaurentPolynomial& p);
LaurentPolynomial polynomial_from_json(const Json& j);

/// Full replay trace with every intermediate value.
Json constants_json(const ConstantsResult& r);

Json discrepancy_json(const DiscrepancyReport& r);

}  // namespace toreq
