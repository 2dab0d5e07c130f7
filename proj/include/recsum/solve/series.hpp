#pragma once

#include "recsum/solve/closed_form.hpp"

#include <vector>

namespace recsum {

/// Coefficients of x^start .. x^(start + K). Exact when every step could be
/// done over Q(atoms); numeric at `precision_bits` otherwise.
struct SeriesExpansion {
    long start = 0;
    int order = 0;
    bool exact = true;
    std::vector<Coeff> exact_coeffs;
    std::vector<Real> numeric_coeffs;
    unsigned precision_bits = kDefaultPrecisionBits;

    std::size_t size() const { return exact ? exact_coeffs.size() : numeric_coeffs.size(); }
    /// Coefficient of x^(start + i) as a number.
    Real numeric(std::size_t i, const Bindings& bindings = {}) const;
};

/// Taylor coefficients at 0 up to x^K. Tries exact arithmetic first and
/// falls back to numbers (needing `bindings`) when an exact power or
/// exponential of a nonzero constant is not available.
/// Throws PoleAtCenter or UnexpandableNode (integrals, opaque symbols).
SeriesExpansion expand_series(const ClosedForm& cf, int K, const Bindings& bindings = {},
                              unsigned precision_bits = kDefaultPrecisionBits, const std::string& variable = "x");

/// Two-sided coefficients c_n, |n| <= K, of a form built from Laurent
/// polynomial leaves, sums, products and exponentials. Inner series are
/// carried to |n| <= K + margin before truncation.
struct BilateralExpansion {
    long low = 0;
    std::vector<Real> coeffs;
    Real coefficient(long n) const;
};

BilateralExpansion expand_bilateral(const ClosedForm& cf, int K, const Bindings& bindings = {},
                                    unsigned precision_bits = kDefaultPrecisionBits, int margin = 80,
                                    const std::string& variable = "x");

} // namespace recsum
