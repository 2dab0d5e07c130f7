#pragma once

#include "recsum/core/numeric.hpp"
#include "recsum/core/poly.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace recsum {

/// Atom standing for the constant of integration before it is fixed.
inline constexpr const char* kFreeConstant = "<C>";

/**
 * Closed-form expression in one or more variables. Leaves are rational
 * functions whose coefficients live in Q(atoms); symbolic sequence values
 * (a[N+1]), opaque generating functions (B(x)) and the free constant are
 * atoms of those leaves. Constructors fold what they can: integer powers
 * of rational leaves, products and sums of leaves, exp(0), equal bases.
 */
class ClosedForm {
public:
    enum class Kind { Rational, Power, Exp, Sum, Product, Integral };

    ClosedForm();
    static ClosedForm rational(RationalFunction f);
    static ClosedForm constant(const Coeff& c, const std::string& variable = "x");
    static ClosedForm power(ClosedForm base, Coeff exponent);
    static ClosedForm exp(ClosedForm argument);
    static ClosedForm sum(std::vector<ClosedForm> terms);
    static ClosedForm product(std::vector<ClosedForm> factors);
    /// Integral of `integrand` (a form in `variable`) from `lower` to the
    /// value of `upper_variable`.
    static ClosedForm integral(ClosedForm integrand, std::string variable, Coeff lower, std::string upper_variable);

    static ClosedForm sequence_value(const std::string& sequence, long index, bool relative_to_n,
                                     const std::string& variable = "x");
    static ClosedForm opaque_gf(const std::string& sequence, const std::string& variable = "x");
    static ClosedForm free_constant(const std::string& variable = "x");

    Kind kind() const { return node_->kind; }
    const RationalFunction& rational_function() const { return node_->leaf; }
    const Coeff& exponent() const { return node_->exponent; }
    const std::vector<ClosedForm>& children() const { return node_->children; }
    const std::string& integration_variable() const { return node_->variable; }
    const std::string& upper_variable() const { return node_->upper; }
    const Coeff& lower_limit() const { return node_->exponent; }

    bool is_zero() const;
    bool is_one() const;
    /// Rational leaf with a constant value.
    std::optional<Coeff> constant_value() const;
    bool contains_integral() const;
    std::set<std::string> atoms() const;
    std::set<std::string> variables() const;

    std::string str() const;

    /// Structural equality after construction-time folding.
    friend bool operator==(const ClosedForm& a, const ClosedForm& b);

private:
    struct Node {
        Kind kind = Kind::Rational;
        RationalFunction leaf;
        Coeff exponent;
        std::vector<ClosedForm> children;
        std::string variable;
        std::string upper;
    };
    explicit ClosedForm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static ClosedForm make(Node node);
    std::shared_ptr<const Node> node_;
};

/// 1/cf, pushed through products, powers and exponentials.
ClosedForm reciprocal(const ClosedForm& cf);

/// Atom name of x^N inside a rational leaf in variable `variable`; used by
/// to_rational only.
std::string power_of_n_atom(const std::string& variable = "x");

/// The form as one rational function, mapping x^(N+k) to the atom x^N
/// times x^k. Fails for non-integer powers, exponentials and integrals.
std::optional<RationalFunction> to_rational(const ClosedForm& cf);

/// Substitutes atoms (N included) everywhere and refolds.
ClosedForm specialize(const ClosedForm& cf, const Substitution& values);

/// Replaces every occurrence of variable `from` by `to`.
ClosedForm rename_variable(const ClosedForm& cf, const std::string& from, const std::string& to);

/// Value at variable = point, as a closed form without that variable.
ClosedForm at_point(const ClosedForm& cf, const std::string& variable, const Coeff& point);

/// d/d(variable). Throws UnsupportedShape when an opaque symbol depends on
/// the variable.
ClosedForm differentiate(const ClosedForm& cf, const std::string& variable = "x");

/// mu'/mu for products of rational leaves, powers and exponentials.
std::optional<RationalFunction> log_derivative(const ClosedForm& cf, const std::string& variable = "x");

/// Exact value at a rational point when the form is rational there.
std::optional<Coeff> eval_exact(const ClosedForm& cf, const Coeff& point, const std::string& variable = "x");

struct QuadratureSettings {
    Real tolerance{"1e-12"};
    int max_depth = 40;
};

/// Numeric value at variable = x. Integral nodes use adaptive Simpson.
/// Throws UnboundConstant, PoleAtEvaluationPoint or QuadratureFailure.
Real eval_closed_form(const ClosedForm& cf, const Real& x, const Bindings& bindings,
                      unsigned precision_bits = kDefaultPrecisionBits, const QuadratureSettings& quad = {},
                      const std::string& variable = "x");

/// Adaptive Simpson quadrature on [a, b].
Real adaptive_simpson(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const QuadratureSettings& settings = {});

} // namespace recsum
