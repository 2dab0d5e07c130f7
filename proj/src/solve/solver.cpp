#include "recsum/solve/solver.hpp"

#include "recsum/core/partial_fractions.hpp"

namespace recsum {

namespace {

// heads + x^N * tails, each a Laurent polynomial over the atom field.
struct Inhomogeneous {
    RationalFunction heads = RationalFunction::constant(Coeff(0), kGfVariable);
    RationalFunction tails = RationalFunction::constant(Coeff(0), kGfVariable);
};

Inhomogeneous collect(const FunctionalEquation& eq) {
    Inhomogeneous out;
    for (const auto& b : eq.boundary) {
        if (b.kind == BoundaryKind::Head) {
            Coeff c = b.coeff;
            if (b.index)
                c *= Coeff::atom(sequence_value_symbol(eq.sequence, *b.index, false));
            out.heads = out.heads + RationalFunction::laurent_monomial(c, static_cast<int>(b.power), kGfVariable);
        } else {
            const Coeff c = b.coeff * Coeff::atom(sequence_value_symbol(eq.sequence, *b.index, true));
            out.tails = out.tails + RationalFunction::laurent_monomial(c, static_cast<int>(b.power), kGfVariable);
        }
    }
    for (const auto& f : eq.forcing)
        out.heads = out.heads + f.multiplier * RationalFunction::constant(Coeff::atom(gf_symbol(f.sequence)), kGfVariable);
    return out;
}

ClosedForm x_to_the_n() {
    return ClosedForm::power(ClosedForm::rational(RationalFunction::laurent_monomial(Coeff(1), 1, kGfVariable)),
                             Coeff::atom(kUpperLimit));
}

ClosedForm scaled(const Inhomogeneous& part, const RationalFunction& factor) {
    return ClosedForm::sum({ClosedForm::rational(part.heads * factor),
                            ClosedForm::product({ClosedForm::rational(part.tails * factor), x_to_the_n()})});
}

std::optional<Rational> rational_point(const Coeff& c) {
    if (c.is_rational())
        return c.rational();
    return std::nullopt;
}

// Exact antiderivative from x0 when mu*g is rational, log-free and free of x^N.
std::optional<ClosedForm> exact_integral(const ClosedForm& integrand, const Coeff& x0) {
    auto h = to_rational(integrand);
    if (!h || h->atoms().count(power_of_n_atom(kGfVariable)))
        return std::nullopt;
    try {
        const RationalIntegral I = integrate_rational(*h);
        if (!I.log_terms.empty())
            return std::nullopt;
        RationalFunction F = I.rational_part();
        if (F.variable() != kGfVariable)
            F = RationalFunction(F.numerator().with_variable(kGfVariable), F.denominator().with_variable(kGfVariable));
        return ClosedForm::rational(F - RationalFunction::constant(F.evaluate(x0), kGfVariable));
    } catch (const UnsupportedDenominator&) {
        return std::nullopt;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleAtEvaluationPoint)
            return std::nullopt;
        throw;
    }
}

} // namespace

ClosedForm integrating_factor(const RationalFunction& p, const std::optional<Rational>& x0) {
    const RationalIntegral I = integrate_rational(p);
    const std::string& var = p.variable();
    std::vector<ClosedForm> factors{ClosedForm::exp(ClosedForm::rational(I.rational_part()))};
    const Poly x = Poly::identity(var);
    for (const auto& log : I.log_terms) {
        const Poly root = Poly::constant(Coeff(log.root), var);
        const Poly base = x0 && *x0 < log.root ? root - x : x - root;
        factors.push_back(ClosedForm::power(ClosedForm::rational(RationalFunction(base)), log.coeff));
    }
    return ClosedForm::product(factors);
}

ClosedForm inhomogeneous_part(const FunctionalEquation& eq) {
    return scaled(collect(eq), RationalFunction::constant(Coeff(1), kGfVariable));
}

ClosedForm solve_algebraic(const FunctionalEquation& eq) {
    if (eq.order != 0)
        throw Error(ErrorKind::UnsupportedShape, "algebraic solve needs an order-0 equation");
    const RationalFunction& c0 = eq.coeffs[0];
    if (c0.is_zero())
        throw Error(ErrorKind::ZeroCoefficient, "coefficient of S vanishes identically");
    return scaled(collect(eq), RationalFunction::constant(Coeff(-1), kGfVariable) / c0);
}

InitialCondition default_initial_condition(const FunctionalEquation& eq) {
    if (eq.mode == EquationMode::Bilateral)
        throw Error(ErrorKind::NoInitialCondition, "bilateral equation needs a normalization S(x0) = value");
    if (eq.n0 > 0)
        return {Coeff(0), ClosedForm::constant(Coeff(0))};
    if (eq.n0 < 0)
        throw Error(ErrorKind::NoInitialCondition, "range starts below zero, so S(0) is a pole; give S(x0) explicitly");
    auto known = eq.known_values.find(0);
    const Coeff a0 = known != eq.known_values.end() ? known->second
                                                     : Coeff::atom(sequence_value_symbol(eq.sequence, 0, false));
    return {Coeff(0), ClosedForm::constant(a0)};
}

ClosedForm solve_first_order(const FunctionalEquation& eq, const std::optional<InitialCondition>& init) {
    if (eq.order != 1)
        throw Error(ErrorKind::UnsupportedShape, "first-order solve needs an order-1 equation");
    const RationalFunction& c1 = eq.coeffs[1];
    if (c1.is_zero())
        throw Error(ErrorKind::ZeroCoefficient, "coefficient of S' vanishes identically");
    const InitialCondition ic = init ? *init : default_initial_condition(eq);

    const ClosedForm mu = integrating_factor(eq.coeffs[0] / c1, rational_point(ic.point));
    const ClosedForm g = scaled(collect(eq), RationalFunction::constant(Coeff(-1), kGfVariable) / c1);
    const ClosedForm constant = ClosedForm::product({at_point(mu, kGfVariable, ic.point), ic.value});

    ClosedForm integral = ClosedForm::constant(Coeff(0));
    if (!g.is_zero()) {
        const ClosedForm integrand = ClosedForm::product({mu, g});
        if (auto exact = exact_integral(integrand, ic.point))
            integral = *exact;
        else
            integral = ClosedForm::integral(rename_variable(integrand, kGfVariable, "t"), "t", ic.point, kGfVariable);
    }
    return ClosedForm::product({reciprocal(mu), ClosedForm::sum({constant, integral})});
}

SolveResult solve(const FunctionalEquation& eq, const std::optional<InitialCondition>& init) {
    switch (eq.order) {
    case 0: return solve_algebraic(eq);
    case 1: return solve_first_order(eq, init);
    default:
        return Unsolved{eq, "order-" + std::to_string(eq.order) +
                                " equation; only algebraic and first-order equations are solved"};
    }
}

FunctionalEquation specialize_equation(const FunctionalEquation& eq, const Substitution& atoms,
                                       std::optional<long> upper, const std::map<long, Coeff>& values) {
    Substitution subs = atoms;
    if (upper)
        subs.insert_or_assign(kUpperLimit, Coeff(*upper));
    FunctionalEquation out = eq;
    for (auto& c : out.coeffs)
        c = c.substitute(subs);
    for (auto& f : out.forcing)
        f.multiplier = f.multiplier.substitute(subs);
    for (auto& [index, value] : out.known_values)
        value = value.substitute(subs);
    for (const auto& [index, value] : values)
        out.known_values.insert_or_assign(index, value.substitute(subs));

    out.boundary.clear();
    for (BoundaryTerm b : eq.boundary) {
        b.coeff = b.coeff.substitute(subs);
        if (b.kind == BoundaryKind::Tail && upper) {
            b.kind = BoundaryKind::Head;
            b.index = *upper + *b.index;
            b.power += *upper;
        }
        if (b.kind == BoundaryKind::Head && b.index) {
            auto it = out.known_values.find(*b.index);
            if (it != out.known_values.end()) {
                b.coeff *= it->second;
                b.index.reset();
            }
        }
        if (b.coeff.is_zero())
            continue;
        // Merge resolved heads of equal power.
        auto same = std::find_if(out.boundary.begin(), out.boundary.end(), [&](const BoundaryTerm& o) {
            return o.kind == b.kind && !o.index && !b.index && o.power == b.power;
        });
        if (same != out.boundary.end()) {
            same->coeff += b.coeff;
            if (same->coeff.is_zero())
                out.boundary.erase(same);
        } else {
            out.boundary.push_back(std::move(b));
        }
    }
    if (upper)
        std::erase_if(out.assumptions, [](const std::string& a) { return a.find("symbolic upper limit") != std::string::npos; });
    return out;
}

ClosedForm ode_residual(const FunctionalEquation& eq, const ClosedForm& cf) {
    if (eq.order > 1)
        throw Error(ErrorKind::UnsupportedShape, "residual is defined for order <= 1");
    std::vector<ClosedForm> terms{ClosedForm::product({ClosedForm::rational(eq.coeffs[0]), cf}), inhomogeneous_part(eq)};
    if (eq.order == 1)
        terms.push_back(ClosedForm::product({ClosedForm::rational(eq.coeffs[1]), differentiate(cf, kGfVariable)}));
    return ClosedForm::sum(terms);
}

} // namespace recsum
