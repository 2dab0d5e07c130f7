#pragma once

#include "recsum/dsl/recurrence.hpp"

#include <functional>
#include <map>

namespace recsum {

/// Terms a_j of a recurrence, exact over Q(atoms) or numeric.
struct OracleSequence {
    std::string sequence;
    long first = 0;
    long last = 0;
    bool exact = true;
    std::map<long, Coeff> exact_terms;
    std::map<long, Real> numeric_terms;
    unsigned precision_bits = kDefaultPrecisionBits;

    bool contains(long index) const { return index >= first && index <= last; }
    /// Term as a number; exact terms are evaluated with `bindings`.
    Real value(long index, const Bindings& bindings = {}) const;
};

/// Forcing values b_n for numeric unrolling.
using ForcingProvider = std::function<Real(long)>;

/// Exact forward substitution up to a_M. Values needed below the first
/// solved index come from init and alias clauses or stay atoms a[j]; the
/// forcing sequence stays symbolic as atoms b[n]. Atoms in `values` are
/// substituted first. Throws LeadingCoefficientZero naming the first
/// blocked n, UnsupportedShape for bilateral ranges.
OracleSequence unroll(const Recurrence& r, long M, const Substitution& values = {});

/// Same in floating point. Atoms, and missing start values a[j], are read
/// from `bindings`.
OracleSequence unroll_numeric(const Recurrence& r, long M, const Bindings& bindings,
                              unsigned precision_bits = kDefaultPrecisionBits, const ForcingProvider& forcing = {});

/// sum_{n=n0}^{N} a_n x^n, exact.
Coeff partial_sum(const Recurrence& r, const Coeff& x, long N, const Substitution& values = {});

/// sum_{n=n0}^{N} a_n x^n from a numeric or exact oracle.
Real partial_sum(const OracleSequence& seq, long n0, const Real& x, long N, const Bindings& bindings = {});

/// Residual of the recurrence at index n on the oracle's terms.
Coeff recurrence_residual(const Recurrence& r, const OracleSequence& seq, long n);

} // namespace recsum
