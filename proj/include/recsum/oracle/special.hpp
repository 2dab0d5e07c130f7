#pragma once

#include "recsum/core/numeric.hpp"
#include "recsum/core/rational.hpp"

#include <functional>

namespace recsum {

/// erf by its everywhere-convergent series; clamped to +-1 for |x| > 6.
Real erf_series(const Real& x);

/// gamma(s, y) for s = k + 1/2 from gamma(1/2, y) = sqrt(pi) erf(sqrt y)
/// and gamma(s + 1, y) = s gamma(s, y) - y^s e^-y. Throws UnsupportedShape
/// for other s.
Real lower_incomplete_gamma(const Rational& s, const Real& y);

/// Gamma(k + 1/2) for integer k >= 0.
Real gamma_half_integer(const Rational& s);

/// J_n(z) by the ascending series, J_-n = (-1)^n J_n.
Real bessel_j(long n, const Real& z);

/// Truncation picked by the tail rule: the smallest K >= start whose
/// geometric estimate of the omitted tail, from the next two terms, is
/// below `tolerance / 10`.
struct Truncation {
    long K = 0;
    Real tail_bound;
};

Truncation choose_truncation(const std::function<Real(long)>& term, long start, const Real& tolerance,
                             long max_terms = 200000);

} // namespace recsum
