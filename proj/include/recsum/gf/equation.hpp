#pragma once

#include "recsum/core/poly.hpp"
#include "recsum/dsl/recurrence.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace recsum {

/// Name of the generating-function variable.
inline constexpr const char* kGfVariable = "x";
/// Atom standing for the symbolic upper limit N.
inline constexpr const char* kUpperLimit = "N";

enum class EquationMode { Finite, Infinite, Bilateral };

std::string_view to_string(EquationMode mode);
std::optional<EquationMode> parse_mode(std::string_view text);

/// x^x_power * sum_d coeffs[d] theta^d, theta = x d/dx.
struct ThetaPoly {
    long x_power = 0;
    std::vector<Coeff> coeffs;

    /// Factor multiplying x^(n + x_power) when applied to x^n.
    Coeff on_monomial(long n) const;

    friend bool operator==(const ThetaPoly&, const ThetaPoly&) = default;
};

enum class BoundaryKind { Head, Tail };

/**
 * coeff * a_index * x^power for head terms, coeff * a_(N+index) * x^(N+power)
 * for tail terms. A head term whose value is known has no index; the value
 * is folded into coeff. Tail coefficients may contain the atom N.
 */
struct BoundaryTerm {
    BoundaryKind kind = BoundaryKind::Head;
    std::optional<long> index;
    long power = 0;
    Coeff coeff;

    friend bool operator==(const BoundaryTerm& a, const BoundaryTerm& b) {
        return a.kind == b.kind && a.index == b.index && a.power == b.power && a.coeff == b.coeff;
    }
};

/// multiplier(x) * G(x), G the generating function of an external sequence.
struct ForcingTerm {
    std::string sequence;
    RationalFunction multiplier;

    friend bool operator==(const ForcingTerm&, const ForcingTerm&) = default;
};

/**
 * sum_j coeffs[j](x) S^(j)(x) + boundary + forcing = 0 for the generating
 * function S of `sequence`.
 */
struct FunctionalEquation {
    std::string sequence;
    int order = 0;
    std::vector<RationalFunction> coeffs;
    std::vector<BoundaryTerm> boundary;
    std::vector<ForcingTerm> forcing;
    EquationMode mode = EquationMode::Finite;
    long n0 = 0;
    /// Values a_j fixed by the recurrence's init clause.
    std::map<long, Coeff> known_values;
    std::vector<std::string> assumptions;

    friend bool operator==(const FunctionalEquation& a, const FunctionalEquation& b);
};

struct Reindexed {
    ThetaPoly contribution;
    std::vector<BoundaryTerm> boundary;
};

/// Multiplies coeff(n) a[n+m] by x^n, sums over the range and re-indexes.
/// Boundary terms are unresolved (no alias or init substitution).
Reindexed reindex_term(const RecurrenceTerm& term, const IndexRange& range);

/// Stirling number of the second kind S(d, j).
Rational stirling2(int d, int j);

/// Rewrites theta powers as x^j D^j; entries are (j, c_j) with c_j nonzero.
std::vector<std::pair<int, RationalFunction>> theta_to_derivatives(const ThetaPoly& t);

/// Throws BilateralWithBoundaries when bilateral mode is requested for a
/// one-sided recurrence. A bilateral range forces bilateral mode.
FunctionalEquation derive_equation(const Recurrence& r, EquationMode mode);

/// Symbol of the generating function of an external sequence, e.g. B(x).
std::string gf_symbol(const std::string& sequence, const std::string& variable = kGfVariable);

/// Symbolic value a_index or a_(N+offset).
std::string sequence_value_symbol(const std::string& sequence, long index, bool relative_to_n);

std::string to_string(const BoundaryTerm& term, const std::string& sequence);
std::string to_string(const FunctionalEquation& eq);

} // namespace recsum
