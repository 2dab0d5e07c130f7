#pragma once

#include "recsum/core/numeric.hpp"
#include "recsum/core/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace recsum {

/// Named opaque constant such as cos(1). Two atoms are the same iff their
/// names agree; the hint is consulted only when evaluating numerically.
struct ConstAtom {
    std::string name;
    std::optional<std::string> numeric_hint;

    friend bool operator==(const ConstAtom& a, const ConstAtom& b) { return a.name == b.name; }
};

/// Product of atom powers, sorted by atom name, exponents >= 1.
using Monomial = std::vector<std::pair<std::string, int>>;

/// Multivariate polynomial over Q in the atoms.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(const Rational& constant);
    static MPoly atom(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    std::set<std::string> atoms() const;

    /// Leading term under graded lexicographic order.
    std::pair<Monomial, Rational> leading() const;
    int total_degree() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly scaled(const Rational& factor) const;
    MPoly times_monomial(const Monomial& m, const Rational& c) const;

    /// q with *this == q * divisor, or nullopt if the division is not exact.
    std::optional<MPoly> divide_exact(const MPoly& divisor) const;

    /// Largest monomial dividing every term.
    Monomial monomial_content() const;
    MPoly divide_monomial(const Monomial& m) const;

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

class CoeffExpr;

/**
 * Element of the coefficient field Q(atoms): a canonical fraction of
 * multivariate polynomials. Every constructor normalizes, so a pure
 * rational value always has a constant numerator and denominator 1.
 */
class Coeff {
public:
    Coeff() = default;
    Coeff(const Rational& value) : num_(value) {}
    Coeff(long value) : num_(Rational(value)) {}
    Coeff(int value) : num_(Rational(value)) {}
    static Coeff atom(const std::string& name);
    static Coeff fraction(MPoly num, MPoly den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return is_rational() && rational().is_one(); }
    bool is_rational() const { return den_is_one() && num_.is_constant(); }
    /// Throws DegenerateExpression if the value carries atoms.
    Rational rational() const;
    std::optional<Rational> as_rational() const;

    const MPoly& numerator() const { return num_; }
    const MPoly& denominator() const { return den_; }
    std::set<std::string> atoms() const;

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;
    Coeff operator-() const;
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
    Coeff& operator/=(const Coeff& o) { return *this = *this / o; }
    Coeff pow(long exponent) const;

    /// Replaces atoms by values; atoms absent from the map are kept.
    Coeff substitute(const std::map<std::string, Coeff, std::less<>>& values) const;

    /// Throws UnboundConstant or PoleAtEvaluationPoint.
    Real evaluate(const Bindings& bindings) const;

    CoeffExpr to_expr() const;
    std::string str() const;

    /// Field equality, decided by exact cross-multiplication.
    friend bool operator==(const Coeff& a, const Coeff& b);

private:
    bool den_is_one() const;
    MPoly num_;
    MPoly den_{Rational(1)};
};

using Substitution = std::map<std::string, Coeff, std::less<>>;

/**
 * Expression tree over rationals and atoms. Trees are immutable and
 * shared; normalize() maps any tree to the canonical tree of its value.
 */
class CoeffExpr {
public:
    enum class Kind { Rational, Atom, Sum, Product, Quotient, Power };

    static CoeffExpr rational(const Rational& value);
    static CoeffExpr atom(const std::string& name);
    static CoeffExpr sum(std::vector<CoeffExpr> terms);
    static CoeffExpr product(std::vector<CoeffExpr> factors);
    static CoeffExpr quotient(CoeffExpr num, CoeffExpr den);
    static CoeffExpr power(CoeffExpr base, long exponent);

    Kind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<CoeffExpr>& children() const { return node_->children; }
    long exponent() const { return node_->exponent; }

    /// Evaluates the tree (throws DegenerateExpression on a zero divisor).
    Coeff to_coeff() const;
    std::string str() const;

    friend bool operator==(const CoeffExpr& a, const CoeffExpr& b);

private:
    struct Node {
        Kind kind = Kind::Rational;
        Rational value;
        std::string name;
        std::vector<CoeffExpr> children;
        long exponent = 0;
    };
    explicit CoeffExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

CoeffExpr normalize(const CoeffExpr& expr);

/// Exact rational value of a (finite) binary floating-point number.
Rational to_exact(const Real& value);

/// Numeric evaluation of an expression tree. Bindings are read as the exact
/// rationals they represent, the tree is evaluated exactly and the result
/// is rounded once to `precision_bits`.
Real eval_numeric(const CoeffExpr& expr, const Bindings& bindings, unsigned precision_bits = kDefaultPrecisionBits);

} // namespace recsum
