#pragma once

#include "recsum/core/coeff.hpp"

#include <string>
#include <utility>
#include <vector>

namespace recsum {

/// Dense univariate polynomial with coefficients in Q(atoms). The zero
/// polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::string variable) : var_(std::move(variable)) {}
    Poly(std::string variable, std::vector<Coeff> coeffs);

    static Poly constant(const Coeff& c, std::string variable = "x");
    static Poly monomial(const Coeff& c, int exponent, std::string variable = "x");
    static Poly identity(std::string variable = "x") { return monomial(Coeff(1), 1, std::move(variable)); }

    const std::string& variable() const { return var_; }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    /// Coefficient of var^k (zero beyond the degree).
    Coeff operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Coeff(); }
    const Coeff& leading() const { return coeffs_.back(); }
    /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
    int valuation() const;
    bool is_pure_rational() const;
    std::set<std::string> atoms() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Coeff& c) const;
    /// Multiplies by var^k, k >= 0.
    Poly shifted_up(int k) const;
    /// Drops the factor var^k; requires valuation() >= k.
    Poly shifted_down(int k) const;

    /// this(inner(var)).
    Poly compose(const Poly& inner) const;
    /// this(var - m), expanded.
    Poly shift(long m) const;
    Poly derivative() const;
    /// Quotient and remainder; the divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;

    Coeff evaluate(const Coeff& at) const;
    Real evaluate_numeric(const Real& at, const Bindings& bindings) const;
    Poly substitute(const Substitution& values) const;
    Poly with_variable(std::string variable) const;

    std::string str() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.var_ == b.var_ && a.coeffs_ == b.coeffs_; }

private:
    void trim();
    void require_same_variable(const Poly& o) const;

    std::string var_ = "x";
    std::vector<Coeff> coeffs_;
};

enum class PolyOp { Add, Mul, Compose, Shift };

/// Dispatcher for the four basic operations; `shift_amount` applies to
/// Shift only. Throws VariableMismatch when the variables differ.
Poly poly_arith(const Poly& p, const Poly& q, PolyOp op, long shift_amount = 0);

/// Monic gcd of two polynomials with pure-rational coefficients.
Poly rational_gcd(const Poly& a, const Poly& b);

/**
 * Quotient of polynomials in one variable. The denominator is monic and,
 * when every coefficient is a pure rational, common factors are canceled.
 * Atom-bearing fractions only have shared powers of the variable removed.
 */
class RationalFunction {
public:
    RationalFunction() : num_("x"), den_(Poly::constant(Coeff(1))) {}
    RationalFunction(Poly num);
    RationalFunction(Poly num, Poly den);
    static RationalFunction constant(const Coeff& c, std::string variable = "x");
    /// c * var^k for any integer k.
    static RationalFunction laurent_monomial(const Coeff& c, int k, std::string variable = "x");

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    const std::string& variable() const { return num_.variable(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    bool is_pure_rational() const { return num_.is_pure_rational() && den_.is_pure_rational(); }
    std::set<std::string> atoms() const;
    /// Constant value; requires is_constant().
    Coeff constant_value() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction derivative() const;

    /// Throws PoleAtEvaluationPoint when the denominator vanishes there.
    Coeff evaluate(const Coeff& at) const;
    Real evaluate_numeric(const Real& at, const Bindings& bindings) const;
    RationalFunction substitute(const Substitution& values) const;

    std::string str() const;

    /// Equality by exact cross-multiplication.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

private:
    void normalize();
    Poly num_;
    Poly den_;
};

} // namespace recsum
