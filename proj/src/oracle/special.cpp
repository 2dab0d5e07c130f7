#include "recsum/oracle/special.hpp"

#include "recsum/core/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace recsum {

namespace {

const Real& series_cutoff() {
    static const Real cutoff("1e-18");
    return cutoff;
}

Real pi() { return boost::math::constants::pi<Real>(); }

// Index k of s = k + 1/2.
long half_integer_index(const Rational& s) {
    const Rational k = s - Rational(1, 2);
    if (!k.is_integer() || k.sign() < 0)
        throw Error(ErrorKind::UnsupportedShape, "order " + s.str() + " is not a half-integer >= 1/2");
    return *k.to_long();
}

} // namespace

Real erf_series(const Real& x) {
    if (x > 6)
        return Real(1);
    if (x < -6)
        return Real(-1);
    // (2/sqrt(pi)) e^{-x^2} sum 2^m x^{2m+1} / (1*3*...*(2m+1))
    const Real x2 = x * x;
    Real term = x;
    Real total = x;
    for (long m = 1; m < 10000; ++m) {
        term *= 2 * x2 / (2 * m + 1);
        total += term;
        if (abs(term) < series_cutoff() * abs(total))
            break;
    }
    return 2 / sqrt(pi()) * exp(-x2) * total;
}

Real gamma_half_integer(const Rational& s) {
    const long k = half_integer_index(s);
    Real g = sqrt(pi());
    for (long j = 0; j < k; ++j)
        g *= Real(j) + Real("0.5");
    return g;
}

Real lower_incomplete_gamma(const Rational& s, const Real& y) {
    const long k = half_integer_index(s);
    if (y < 0)
        throw Error(ErrorKind::UnsupportedShape, "incomplete gamma needs y >= 0");
    Real g = sqrt(pi()) * erf_series(sqrt(y));
    const Real e = exp(-y);
    Real order("0.5");
    for (long j = 0; j < k; ++j) {
        g = order * g - pow(y, order) * e;
        order += 1;
    }
    return g;
}

Real bessel_j(long n, const Real& z) {
    if (n < 0)
        return (n % 2 == 0 ? 1 : -1) * bessel_j(-n, z);
    // sum_k (-1)^k (z/2)^{n+2k} / (k! (n+k)!)
    const Real h = z / 2;
    Real term = 1;
    for (long j = 1; j <= n; ++j)
        term *= h / j;
    Real total = term;
    Real largest = abs(term);
    const Real h2 = h * h;
    for (long k = 1; k < 10000; ++k) {
        term *= -h2 / (Real(k) * Real(n + k));
        total += term;
        largest = std::max(largest, Real(abs(total)));
        if (abs(term) < series_cutoff() * largest && Real(k) > h)
            break;
    }
    return total;
}

Truncation choose_truncation(const std::function<Real(long)>& term, long start, const Real& tolerance, long max_terms) {
    const Real target = tolerance / 10;
    Real next = abs(term(start + 1));
    for (long K = start; K < start + max_terms; ++K) {
        const Real after = abs(term(K + 2));
        if (next == 0 && after == 0)
            return {K, Real(0)};
        if (after < next) {
            const Real ratio = after / next;
            const Real bound = next / (1 - ratio);
            if (bound < target)
                return {K, bound};
        }
        next = after;
    }
    throw Error(ErrorKind::UnsupportedShape, "series tail did not fall below " + format_real(target, 3) + " within " +
                                                 std::to_string(max_terms) + " terms");
}

} // namespace recsum
