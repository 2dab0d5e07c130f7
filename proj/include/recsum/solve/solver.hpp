#pragma once

#include "recsum/gf/equation.hpp"
#include "recsum/solve/closed_form.hpp"

#include <optional>
#include <variant>

namespace recsum {

/// S(point) = value. For bilateral equations this is the normalization.
struct InitialCondition {
    Coeff point;
    ClosedForm value;
};

/// Equation the solver does not attempt (order >= 2).
struct Unsolved {
    FunctionalEquation equation;
    std::string reason;
};

using SolveResult = std::variant<ClosedForm, Unsolved>;

/// mu with mu'/mu = p. Log terms become powers (x - r)^e, or (r - x)^e when
/// x0 lies left of r so the base is positive near x0.
ClosedForm integrating_factor(const RationalFunction& p, const std::optional<Rational>& x0 = std::nullopt);

/// S = -(boundary + forcing)/c0 for an order-0 equation. Tail terms keep
/// their symbolic values a[N+j] and the power x^N.
ClosedForm solve_algebraic(const FunctionalEquation& eq);

/// S(0) from the equation's range: a[0] (known or symbolic) when n0 = 0,
/// zero when n0 > 0. Throws NoInitialCondition otherwise.
InitialCondition default_initial_condition(const FunctionalEquation& eq);

/// S = mu^-1 (C + integral from x0 to x of mu g) with g = -(boundary +
/// forcing)/c1. The integral is done exactly when mu g is rational and
/// log-free; otherwise it stays an integral node in t.
ClosedForm solve_first_order(const FunctionalEquation& eq, const std::optional<InitialCondition>& init = std::nullopt);

/// Dispatch on order; order >= 2 comes back as Unsolved.
SolveResult solve(const FunctionalEquation& eq, const std::optional<InitialCondition>& init = std::nullopt);

/// Substitutes atoms in coefficients and boundary terms. With `upper`
/// given, tails become heads at absolute indices; `values` then resolves
/// any head whose value is listed.
FunctionalEquation specialize_equation(const FunctionalEquation& eq, const Substitution& atoms,
                                       std::optional<long> upper = std::nullopt,
                                       const std::map<long, Coeff>& values = {});

/// c1 S' + c0 S + boundary + forcing with S replaced by cf, as a closed form
/// (zero for a solution). Only order <= 1.
ClosedForm ode_residual(const FunctionalEquation& eq, const ClosedForm& cf);

/// boundary + forcing of eq as a closed form in x.
ClosedForm inhomogeneous_part(const FunctionalEquation& eq);

} // namespace recsum
