#pragma once

#include "recsum/dsl/recurrence.hpp"
#include "recsum/gf/equation.hpp"
#include "recsum/oracle/verify.hpp"
#include "recsum/solve/closed_form.hpp"
#include "recsum/solve/series.hpp"

#include <json.hpp>

namespace recsum {

using Json = nlohmann::ordered_json;

/// Exact rationals are strings ("3/4"); other coefficients are expression
/// trees {"atom": name}, {"sum": [...]}, {"product": [...]},
/// {"quotient": [num, den]}, {"power": [base, k]}.
Json to_json(const Coeff& c);
Coeff coeff_from_json(const Json& j);

/// Coefficient array, lowest degree first.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j, const std::string& variable);

Json to_json(const BoundaryTerm& b);
BoundaryTerm boundary_from_json(const Json& j);

/// {order, coeffs: [{j, num, den}], boundary, forcing, mode, n0,
/// known_values, assumptions, sequence, text}
Json to_json(const FunctionalEquation& eq);
FunctionalEquation equation_from_json(const Json& j);

Json to_json(const Recurrence& r);
Json to_json(const Diagnostics& diagnostics);
Json to_json(const ClosedForm& cf);
Json to_json(const SeriesExpansion& s);
Json to_json(const Comparison& c);
Json to_json(const VerificationReport& report);

} // namespace recsum
