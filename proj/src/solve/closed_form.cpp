#include "recsum/solve/closed_form.hpp"

#include "recsum/core/error.hpp"
#include "recsum/gf/equation.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace recsum {

namespace {

RationalFunction rf_pow(const RationalFunction& f, long k) {
    RationalFunction base = k < 0 ? RationalFunction::constant(Coeff(1), f.variable()) / f : f;
    RationalFunction out = RationalFunction::constant(Coeff(1), f.variable());
    for (long e = k < 0 ? -k : k; e > 0; e >>= 1) {
        if (e & 1)
            out = out * base;
        if (e > 1)
            base = base * base;
    }
    return out;
}

// Rebuilds a constant leaf in another variable.
RationalFunction in_variable(const RationalFunction& f, const std::string& var) {
    if (f.variable() == var)
        return f;
    if (f.is_constant())
        return RationalFunction::constant(f.constant_value(), var);
    return RationalFunction(f.numerator().with_variable(var), f.denominator().with_variable(var));
}

std::optional<long> integer_value(const Coeff& c) {
    if (!c.is_rational())
        return std::nullopt;
    const Rational r = c.rational();
    if (!r.is_integer() || Rational(1L << 30) < r.abs())
        return std::nullopt;
    return r.to_long();
}

// Folds a list of rational leaves: constants join any leaf; leaves in
// different variables stay apart.
template <typename Op>
std::vector<RationalFunction> fold_leaves(const std::vector<RationalFunction>& leaves, Op op) {
    std::vector<RationalFunction> out;
    std::optional<RationalFunction> constant;
    for (const auto& f : leaves) {
        if (f.is_constant()) {
            constant = constant ? op(*constant, in_variable(f, constant->variable())) : f;
            continue;
        }
        auto it = std::find_if(out.begin(), out.end(), [&](const RationalFunction& g) { return g.variable() == f.variable(); });
        if (it == out.end())
            out.push_back(f);
        else
            *it = op(*it, f);
    }
    if (constant) {
        if (out.empty())
            out.push_back(*constant);
        else
            out.front() = op(out.front(), in_variable(*constant, out.front().variable()));
    }
    return out;
}

std::string leaf_variable(const ClosedForm& cf) {
    const auto vars = cf.variables();
    return vars.empty() ? std::string("x") : *vars.begin();
}

bool mentions_variable(const std::string& atom, const std::string& var) {
    return atom.size() > var.size() + 2 && atom.compare(atom.size() - var.size() - 2, std::string::npos, "(" + var + ")") == 0;
}

} // namespace

ClosedForm::ClosedForm() : ClosedForm(constant(Coeff(0))) {}

ClosedForm ClosedForm::make(Node node) { return ClosedForm(std::make_shared<const Node>(std::move(node))); }

ClosedForm ClosedForm::rational(RationalFunction f) {
    Node n;
    n.kind = Kind::Rational;
    n.leaf = std::move(f);
    return make(std::move(n));
}

ClosedForm ClosedForm::constant(const Coeff& c, const std::string& variable) {
    return rational(RationalFunction::constant(c, variable));
}

ClosedForm ClosedForm::power(ClosedForm base, Coeff exponent) {
    const std::string var = leaf_variable(base);
    if (exponent.is_zero())
        return constant(Coeff(1), var);
    if (exponent.is_one())
        return base;
    if (base.kind() == Kind::Power)
        return power(base.children()[0], base.exponent() * exponent);
    if (base.kind() == Kind::Rational) {
        const RationalFunction& f = base.rational_function();
        if (auto k = integer_value(exponent))
            return rational(rf_pow(f, *k));
        if (f.is_constant()) {
            const Coeff c = f.constant_value();
            if (c.is_one())
                return base;
            if (c.is_rational() && exponent.is_rational() && c.rational().sign() > 0)
                if (auto exact = exact_pow(c.rational(), exponent.rational()))
                    return constant(Coeff(*exact), var);
        }
    }
    Node n;
    n.kind = Kind::Power;
    n.children = {std::move(base)};
    n.exponent = std::move(exponent);
    return make(std::move(n));
}

ClosedForm ClosedForm::exp(ClosedForm argument) {
    if (argument.is_zero())
        return constant(Coeff(1), leaf_variable(argument));
    Node n;
    n.kind = Kind::Exp;
    n.children = {std::move(argument)};
    return make(std::move(n));
}

ClosedForm ClosedForm::sum(std::vector<ClosedForm> terms) {
    std::vector<RationalFunction> leaves;
    std::vector<ClosedForm> rest;
    std::function<void(const ClosedForm&)> add = [&](const ClosedForm& t) {
        if (t.kind() == Kind::Sum) {
            for (const auto& c : t.children())
                add(c);
        } else if (t.kind() == Kind::Rational) {
            leaves.push_back(t.rational_function());
        } else {
            rest.push_back(t);
        }
    };
    for (const auto& t : terms)
        add(t);
    std::vector<ClosedForm> out;
    std::string var = "x";
    for (const auto& f : fold_leaves(leaves, [](const RationalFunction& a, const RationalFunction& b) { return a + b; })) {
        var = f.variable();
        if (!f.is_zero())
            out.push_back(rational(f));
    }
    out.insert(out.end(), rest.begin(), rest.end());
    if (out.empty())
        return constant(Coeff(0), var);
    if (out.size() == 1)
        return out.front();
    Node n;
    n.kind = Kind::Sum;
    n.children = std::move(out);
    return make(std::move(n));
}

ClosedForm ClosedForm::product(std::vector<ClosedForm> factors) {
    std::vector<RationalFunction> leaves;
    std::vector<std::pair<ClosedForm, Coeff>> powers;
    std::vector<ClosedForm> exp_args;
    std::vector<ClosedForm> rest;
    auto add_power = [&](const ClosedForm& base, const Coeff& e) {
        for (auto& [b, total] : powers)
            if (b == base) {
                total += e;
                return;
            }
        powers.emplace_back(base, e);
    };
    std::function<void(const ClosedForm&)> add = [&](const ClosedForm& f) {
        switch (f.kind()) {
        case Kind::Product:
            for (const auto& c : f.children())
                add(c);
            break;
        case Kind::Rational: leaves.push_back(f.rational_function()); break;
        case Kind::Power: add_power(f.children()[0], f.exponent()); break;
        case Kind::Exp: exp_args.push_back(f.children()[0]); break;
        default: add_power(f, Coeff(1)); break;
        }
    };
    for (const auto& f : factors)
        add(f);

    for (const auto& [base, e] : powers) {
        ClosedForm p = power(base, e);
        if (p.kind() == Kind::Rational)
            leaves.push_back(p.rational_function());
        else
            rest.push_back(p);
    }
    if (!exp_args.empty()) {
        ClosedForm e = exp(sum(exp_args));
        if (e.kind() == Kind::Rational)
            leaves.push_back(e.rational_function());
        else
            rest.push_back(e);
    }
    std::vector<ClosedForm> out;
    std::string var = "x";
    for (const auto& f : fold_leaves(leaves, [](const RationalFunction& a, const RationalFunction& b) { return a * b; })) {
        var = f.variable();
        if (f.is_zero())
            return constant(Coeff(0), var);
        if (!(f.is_constant() && f.constant_value().is_one()))
            out.push_back(rational(f));
    }
    out.insert(out.end(), rest.begin(), rest.end());
    if (out.empty())
        return constant(Coeff(1), var);
    if (out.size() == 1)
        return out.front();
    Node n;
    n.kind = Kind::Product;
    n.children = std::move(out);
    return make(std::move(n));
}

ClosedForm ClosedForm::integral(ClosedForm integrand, std::string variable, Coeff lower, std::string upper_variable) {
    if (integrand.is_zero())
        return constant(Coeff(0), upper_variable);
    Node n;
    n.kind = Kind::Integral;
    n.children = {std::move(integrand)};
    n.variable = std::move(variable);
    n.exponent = std::move(lower);
    n.upper = std::move(upper_variable);
    return make(std::move(n));
}

ClosedForm ClosedForm::sequence_value(const std::string& sequence, long index, bool relative_to_n,
                                      const std::string& variable) {
    return constant(Coeff::atom(sequence_value_symbol(sequence, index, relative_to_n)), variable);
}

ClosedForm ClosedForm::opaque_gf(const std::string& sequence, const std::string& variable) {
    return constant(Coeff::atom(gf_symbol(sequence, variable)), variable);
}

ClosedForm ClosedForm::free_constant(const std::string& variable) {
    return constant(Coeff::atom(kFreeConstant), variable);
}

bool ClosedForm::is_zero() const { return kind() == Kind::Rational && rational_function().is_zero(); }

bool ClosedForm::is_one() const {
    return kind() == Kind::Rational && rational_function().is_constant() && rational_function().constant_value().is_one();
}

std::optional<Coeff> ClosedForm::constant_value() const {
    if (kind() == Kind::Rational && rational_function().is_constant())
        return rational_function().constant_value();
    return std::nullopt;
}

bool ClosedForm::contains_integral() const {
    if (kind() == Kind::Integral)
        return true;
    return std::any_of(children().begin(), children().end(), [](const ClosedForm& c) { return c.contains_integral(); });
}

std::set<std::string> ClosedForm::atoms() const {
    std::set<std::string> out;
    if (kind() == Kind::Rational)
        out = rational_function().atoms();
    if (kind() == Kind::Power || kind() == Kind::Integral)
        out = exponent().atoms();
    for (const auto& c : children())
        out.merge(c.atoms());
    return out;
}

std::set<std::string> ClosedForm::variables() const {
    std::set<std::string> out;
    if (kind() == Kind::Rational && !rational_function().is_constant())
        out.insert(rational_function().variable());
    if (kind() == Kind::Integral) {
        out.insert(upper_variable());
        std::set<std::string> inner = children()[0].variables();
        inner.erase(integration_variable());
        out.merge(inner);
        return out;
    }
    for (const auto& c : children())
        out.merge(c.variables());
    return out;
}

std::string ClosedForm::str() const {
    switch (kind()) {
    case Kind::Rational: {
        const RationalFunction& f = rational_function();
        const std::string s = f.str();
        if (f.is_constant() && s.find(' ') == std::string::npos)
            return s;
        return "(" + s + ")";
    }
    case Kind::Power: {
        const ClosedForm& b = children()[0];
        std::string base = b.str();
        if (b.kind() != Kind::Rational && b.kind() != Kind::Exp)
            base = "(" + base + ")";
        std::string e = exponent().str();
        if (!(exponent().is_rational() && exponent().rational().is_integer() && exponent().rational().sign() > 0))
            e = "(" + e + ")";
        return base + "^" + e;
    }
    case Kind::Exp: {
        std::string a = children()[0].str();
        if (a.size() > 1 && a.front() == '(' && a.back() == ')' && children()[0].kind() == Kind::Rational)
            a = a.substr(1, a.size() - 2);
        return "exp(" + a + ")";
    }
    case Kind::Sum: {
        std::string out;
        for (const auto& c : children())
            out += (out.empty() ? "" : " + ") + c.str();
        return out;
    }
    case Kind::Product: {
        std::string out;
        for (const auto& c : children()) {
            std::string s = c.str();
            if (c.kind() == Kind::Sum)
                s = "(" + s + ")";
            out += (out.empty() ? "" : "*") + s;
        }
        return out;
    }
    case Kind::Integral:
        return "integral(" + children()[0].str() + ", " + integration_variable() + ", " + lower_limit().str() + ", " +
               upper_variable() + ")";
    }
    return {};
}

bool operator==(const ClosedForm& a, const ClosedForm& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case ClosedForm::Kind::Rational: {
        const auto& f = a.rational_function();
        const auto& g = b.rational_function();
        if (f.is_constant() && g.is_constant())
            return f.constant_value() == g.constant_value();
        return f.variable() == g.variable() && f == g;
    }
    case ClosedForm::Kind::Power:
        return a.exponent() == b.exponent() && a.children() == b.children();
    case ClosedForm::Kind::Integral:
        return a.integration_variable() == b.integration_variable() && a.upper_variable() == b.upper_variable() &&
               a.lower_limit() == b.lower_limit() && a.children() == b.children();
    default:
        return a.children() == b.children();
    }
}

ClosedForm reciprocal(const ClosedForm& cf) {
    using Kind = ClosedForm::Kind;
    switch (cf.kind()) {
    case Kind::Rational: {
        const RationalFunction& f = cf.rational_function();
        if (f.is_zero())
            throw Error(ErrorKind::DegenerateExpression, "reciprocal of zero");
        return ClosedForm::rational(RationalFunction::constant(Coeff(1), f.variable()) / f);
    }
    case Kind::Power: return ClosedForm::power(cf.children()[0], -cf.exponent());
    case Kind::Exp:
        return ClosedForm::exp(ClosedForm::product({ClosedForm::constant(Coeff(-1)), cf.children()[0]}));
    case Kind::Product: {
        std::vector<ClosedForm> out;
        for (const auto& c : cf.children())
            out.push_back(reciprocal(c));
        return ClosedForm::product(out);
    }
    default: return ClosedForm::power(cf, Coeff(-1));
    }
}

std::string power_of_n_atom(const std::string& variable) { return variable + "^N"; }

std::optional<RationalFunction> to_rational(const ClosedForm& cf) {
    using Kind = ClosedForm::Kind;
    switch (cf.kind()) {
    case Kind::Rational:
        return cf.rational_function();
    case Kind::Power: {
        const ClosedForm& base = cf.children()[0];
        if (base.kind() == Kind::Rational) {
            const RationalFunction& f = base.rational_function();
            const std::string var = f.variable();
            if (f == RationalFunction::laurent_monomial(Coeff(1), 1, var)) {
                const Coeff k = cf.exponent() - Coeff::atom(kUpperLimit);
                if (auto shift = integer_value(k))
                    return RationalFunction::laurent_monomial(Coeff::atom(power_of_n_atom(var)), static_cast<int>(*shift), var);
            }
        }
        auto b = to_rational(base);
        auto k = integer_value(cf.exponent());
        if (!b || !k)
            return std::nullopt;
        return rf_pow(*b, *k);
    }
    case Kind::Sum:
    case Kind::Product: {
        std::optional<RationalFunction> acc;
        for (const auto& c : cf.children()) {
            auto f = to_rational(c);
            if (!f)
                return std::nullopt;
            if (!acc) {
                acc = f;
                continue;
            }
            const std::string var = acc->is_constant() ? f->variable() : acc->variable();
            if (!f->is_constant() && !acc->is_constant() && f->variable() != acc->variable())
                return std::nullopt;
            const RationalFunction a = in_variable(*acc, var);
            const RationalFunction g = in_variable(*f, var);
            acc = cf.kind() == Kind::Sum ? a + g : a * g;
        }
        return acc;
    }
    default:
        return std::nullopt;
    }
}

ClosedForm specialize(const ClosedForm& cf, const Substitution& values) {
    using Kind = ClosedForm::Kind;
    auto each = [&](const std::vector<ClosedForm>& cs) {
        std::vector<ClosedForm> out;
        for (const auto& c : cs)
            out.push_back(specialize(c, values));
        return out;
    };
    switch (cf.kind()) {
    case Kind::Rational: return ClosedForm::rational(cf.rational_function().substitute(values));
    case Kind::Power: return ClosedForm::power(specialize(cf.children()[0], values), cf.exponent().substitute(values));
    case Kind::Exp: return ClosedForm::exp(specialize(cf.children()[0], values));
    case Kind::Sum: return ClosedForm::sum(each(cf.children()));
    case Kind::Product: return ClosedForm::product(each(cf.children()));
    case Kind::Integral:
        return ClosedForm::integral(specialize(cf.children()[0], values), cf.integration_variable(),
                                    cf.lower_limit().substitute(values), cf.upper_variable());
    }
    return cf;
}

ClosedForm rename_variable(const ClosedForm& cf, const std::string& from, const std::string& to) {
    using Kind = ClosedForm::Kind;
    auto each = [&](const std::vector<ClosedForm>& cs) {
        std::vector<ClosedForm> out;
        for (const auto& c : cs)
            out.push_back(rename_variable(c, from, to));
        return out;
    };
    switch (cf.kind()) {
    case Kind::Rational: {
        RationalFunction f = cf.rational_function();
        Substitution opaque;
        for (const auto& a : f.atoms())
            if (mentions_variable(a, from))
                opaque.emplace(a, Coeff::atom(a.substr(0, a.size() - from.size() - 2) + "(" + to + ")"));
        if (!opaque.empty())
            f = f.substitute(opaque);
        if (f.variable() == from)
            f = RationalFunction(f.numerator().with_variable(to), f.denominator().with_variable(to));
        return ClosedForm::rational(f);
    }
    case Kind::Power: return ClosedForm::power(rename_variable(cf.children()[0], from, to), cf.exponent());
    case Kind::Exp: return ClosedForm::exp(rename_variable(cf.children()[0], from, to));
    case Kind::Sum: return ClosedForm::sum(each(cf.children()));
    case Kind::Product: return ClosedForm::product(each(cf.children()));
    case Kind::Integral: {
        const ClosedForm inner = cf.integration_variable() == from ? cf.children()[0]
                                                                   : rename_variable(cf.children()[0], from, to);
        return ClosedForm::integral(inner, cf.integration_variable(), cf.lower_limit(),
                                    cf.upper_variable() == from ? to : cf.upper_variable());
    }
    }
    return cf;
}

ClosedForm at_point(const ClosedForm& cf, const std::string& variable, const Coeff& point) {
    using Kind = ClosedForm::Kind;
    auto each = [&](const std::vector<ClosedForm>& cs) {
        std::vector<ClosedForm> out;
        for (const auto& c : cs)
            out.push_back(at_point(c, variable, point));
        return out;
    };
    switch (cf.kind()) {
    case Kind::Rational: {
        const RationalFunction& f = cf.rational_function();
        if (f.variable() != variable || f.is_constant())
            return cf;
        return ClosedForm::constant(f.evaluate(point), variable);
    }
    case Kind::Power: return ClosedForm::power(at_point(cf.children()[0], variable, point), cf.exponent());
    case Kind::Exp: return ClosedForm::exp(at_point(cf.children()[0], variable, point));
    case Kind::Sum: return ClosedForm::sum(each(cf.children()));
    case Kind::Product: return ClosedForm::product(each(cf.children()));
    case Kind::Integral:
        if (cf.upper_variable() != variable)
            return cf;
        if (cf.lower_limit() == point)
            return ClosedForm::constant(Coeff(0), variable);
        throw Error(ErrorKind::UnsupportedShape, "integral node cannot be evaluated exactly");
    }
    return cf;
}

ClosedForm differentiate(const ClosedForm& cf, const std::string& variable) {
    using Kind = ClosedForm::Kind;
    switch (cf.kind()) {
    case Kind::Rational: {
        const RationalFunction& f = cf.rational_function();
        for (const auto& a : f.atoms())
            if (mentions_variable(a, variable))
                throw Error(ErrorKind::UnsupportedShape, "cannot differentiate the opaque symbol " + a);
        if (f.variable() != variable || f.is_constant())
            return ClosedForm::constant(Coeff(0), variable);
        return ClosedForm::rational(f.derivative());
    }
    case Kind::Power: {
        const ClosedForm& b = cf.children()[0];
        return ClosedForm::product({ClosedForm::constant(cf.exponent(), variable),
                                    ClosedForm::power(b, cf.exponent() - Coeff(1)), differentiate(b, variable)});
    }
    case Kind::Exp: return ClosedForm::product({cf, differentiate(cf.children()[0], variable)});
    case Kind::Sum: {
        std::vector<ClosedForm> out;
        for (const auto& c : cf.children())
            out.push_back(differentiate(c, variable));
        return ClosedForm::sum(out);
    }
    case Kind::Product: {
        std::vector<ClosedForm> terms;
        const auto& fs = cf.children();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<ClosedForm> factors = fs;
            factors[i] = differentiate(fs[i], variable);
            terms.push_back(ClosedForm::product(factors));
        }
        return ClosedForm::sum(terms);
    }
    case Kind::Integral:
        if (cf.upper_variable() != variable)
            return ClosedForm::constant(Coeff(0), variable);
        return rename_variable(cf.children()[0], cf.integration_variable(), variable);
    }
    return cf;
}

std::optional<RationalFunction> log_derivative(const ClosedForm& cf, const std::string& variable) {
    using Kind = ClosedForm::Kind;
    switch (cf.kind()) {
    case Kind::Rational: {
        const RationalFunction& f = cf.rational_function();
        if (f.variable() != variable || f.is_constant())
            return RationalFunction::constant(Coeff(0), variable);
        return f.derivative() / f;
    }
    case Kind::Power: {
        auto inner = log_derivative(cf.children()[0], variable);
        if (!inner)
            return std::nullopt;
        return *inner * RationalFunction::constant(cf.exponent(), variable);
    }
    case Kind::Exp: return to_rational(differentiate(cf.children()[0], variable));
    case Kind::Product: {
        RationalFunction total = RationalFunction::constant(Coeff(0), variable);
        for (const auto& c : cf.children()) {
            auto d = log_derivative(c, variable);
            if (!d)
                return std::nullopt;
            total = total + in_variable(*d, variable);
        }
        return total;
    }
    default:
        return std::nullopt;
    }
}

std::optional<Coeff> eval_exact(const ClosedForm& cf, const Coeff& point, const std::string& variable) {
    try {
        return at_point(cf, variable, point).constant_value();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnsupportedShape)
            return std::nullopt;
        throw;
    }
}

namespace {

struct Simpson {
    const std::function<Real(const Real&)>& f;
    long budget = 4'000'000;

    Real eval(const Real& t) {
        if (--budget < 0)
            throw Error(ErrorKind::QuadratureFailure, "evaluation budget exhausted");
        Real v = f(t);
        if (!boost::multiprecision::isfinite(v))
            throw Error(ErrorKind::QuadratureFailure, "integrand is not finite");
        return v;
    }

    Real step(const Real& a, const Real& b, const Real& fa, const Real& fm, const Real& fb, const Real& whole,
              const Real& eps, int depth) {
        const Real m = (a + b) / 2;
        const Real lm = (a + m) / 2;
        const Real rm = (m + b) / 2;
        const Real flm = eval(lm);
        const Real frm = eval(rm);
        const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
        const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
        const Real delta = left + right - whole;
        if (abs(delta) <= 15 * eps)
            return left + right + delta / 15;
        if (depth <= 0)
            throw Error(ErrorKind::QuadratureFailure, "refinement did not converge");
        return step(a, m, fa, flm, fm, left, eps / 2, depth - 1) + step(m, b, fm, frm, fb, right, eps / 2, depth - 1);
    }
};

Real eval_node(const ClosedForm& cf, std::map<std::string, Real>& vars, const Bindings& bindings,
               const QuadratureSettings& quad) {
    using Kind = ClosedForm::Kind;
    switch (cf.kind()) {
    case Kind::Rational: {
        const RationalFunction& f = cf.rational_function();
        if (f.is_constant())
            return f.constant_value().evaluate(bindings);
        auto it = vars.find(f.variable());
        if (it == vars.end())
            throw Error(ErrorKind::UnboundConstant, "variable '" + f.variable() + "' has no value");
        return f.evaluate_numeric(it->second, bindings);
    }
    case Kind::Power: {
        const Real b = eval_node(cf.children()[0], vars, bindings, quad);
        const Real e = cf.exponent().evaluate(bindings);
        if (b == 0 && e < 0)
            throw Error(ErrorKind::PoleAtEvaluationPoint, "zero base raised to a negative power in " + cf.str());
        if (b < 0 && e != floor(e))
            throw Error(ErrorKind::PoleAtEvaluationPoint, "negative base with a non-integer exponent in " + cf.str());
        return pow(b, e);
    }
    case Kind::Exp: return exp(eval_node(cf.children()[0], vars, bindings, quad));
    case Kind::Sum: {
        Real total = 0;
        for (const auto& c : cf.children())
            total += eval_node(c, vars, bindings, quad);
        return total;
    }
    case Kind::Product: {
        Real total = 1;
        for (const auto& c : cf.children())
            total *= eval_node(c, vars, bindings, quad);
        return total;
    }
    case Kind::Integral: {
        const Real lower = cf.lower_limit().evaluate(bindings);
        auto it = vars.find(cf.upper_variable());
        if (it == vars.end())
            throw Error(ErrorKind::UnboundConstant, "variable '" + cf.upper_variable() + "' has no value");
        const Real upper = it->second;
        const std::string& t = cf.integration_variable();
        std::function<Real(const Real&)> f = [&](const Real& s) {
            std::map<std::string, Real> inner = vars;
            inner[t] = s;
            return eval_node(cf.children()[0], inner, bindings, quad);
        };
        return adaptive_simpson(f, lower, upper, quad);
    }
    }
    return 0;
}

} // namespace

Real adaptive_simpson(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const QuadratureSettings& settings) {
    if (a == b)
        return 0;
    Simpson s{f};
    const Real fa = s.eval(a);
    const Real fb = s.eval(b);
    const Real m = (a + b) / 2;
    const Real fm = s.eval(m);
    const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return s.step(a, b, fa, fm, fb, whole, settings.tolerance, settings.max_depth);
}

Real eval_closed_form(const ClosedForm& cf, const Real& x, const Bindings& bindings, unsigned precision_bits,
                      const QuadratureSettings& quad, const std::string& variable) {
    PrecisionScope scope(precision_bits);
    std::map<std::string, Real> vars{{variable, x}};
    return eval_node(cf, vars, bindings, quad);
}

} // namespace recsum
