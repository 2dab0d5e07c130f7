#pragma once

#include "recsum/core/error.hpp"
#include "recsum/core/poly.hpp"

#include <vector>

namespace recsum {

/// Raised when a denominator does not split into rational linear factors.
/// Carries the part of the denominator left after extracting every
/// rational root that was found.
class UnsupportedDenominator : public Error {
public:
    UnsupportedDenominator(const std::string& message, Poly remainder)
        : Error(ErrorKind::UnsupportedDenominator, message), remainder_(std::move(remainder)) {}
    const Poly& remainder() const { return remainder_; }

private:
    Poly remainder_;
};

/// sum over l of coeffs[l-1] / (x - root)^l, l = 1..multiplicity.
struct PoleTerm {
    Rational root;
    int multiplicity = 1;
    std::vector<Coeff> coeffs;
};

struct PartialFractions {
    Poly polynomial_part;
    /// (exponent <= -1, coefficient) pairs: the pole at zero.
    std::vector<std::pair<int, Coeff>> laurent_part;
    /// Nonzero rational poles, distinct roots, in increasing order.
    std::vector<PoleTerm> pole_terms;

    RationalFunction recombine() const;
};

/// Rational roots of a pure-rational polynomial with multiplicities, found
/// by the rational-root test. `remainder` is what is left unfactored.
struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;
    Poly remainder;
};
RationalRoots rational_roots(const Poly& p);

/// Throws UnsupportedDenominator when the denominator has atom-bearing
/// coefficients or an irrational / unfound root.
PartialFractions partial_fractions(const RationalFunction& r);

/// coeff * log(x - root)
struct LogTerm {
    Rational root;
    Coeff coeff;
};

/// coeff * (x - root)^exponent with exponent <= -1.
struct PoleAntiderivative {
    Rational root;
    int exponent = -1;
    Coeff coeff;
};

struct RationalIntegral {
    std::string variable = "x";
    Poly antiderivative_poly;
    std::vector<PoleAntiderivative> antiderivative_laurent;
    std::vector<LogTerm> log_terms;

    /// Polynomial plus pole pieces as one rational function (logs excluded).
    RationalFunction rational_part() const;
    /// Symbolic derivative of all pieces, logs read as coeff/(x - root).
    RationalFunction derivative() const;
};

RationalIntegral integrate_rational(const RationalFunction& r);

} // namespace recsum
