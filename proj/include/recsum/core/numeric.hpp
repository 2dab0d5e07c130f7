#pragma once

#include "recsum/core/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <string>
#include <string_view>

namespace recsum {

/// Working real type for every numeric evaluation. Precision is set per
/// call site through PrecisionScope.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the MPFR working precision (in bits) for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

/// Atom and symbol values used at evaluation time.
using Bindings = std::map<std::string, Real, std::less<>>;

Real to_real(const Rational& value);

/// Evaluates a small numeric expression used for bindings: decimal or
/// rational literals, + - * / ^, parentheses, pi, e, and the functions
/// sqrt exp log cos sin. Throws Error(SyntaxError) on bad input.
Real parse_real_expression(std::string_view text);

std::string format_real(const Real& value, int digits = 17);

} // namespace recsum
