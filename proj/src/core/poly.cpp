#include "recsum/core/poly.hpp"

#include "recsum/core/error.hpp"

namespace recsum {

Poly::Poly(std::string variable, std::vector<Coeff> coeffs) : var_(std::move(variable)), coeffs_(std::move(coeffs)) {
    trim();
}

Poly Poly::constant(const Coeff& c, std::string variable) { return Poly(std::move(variable), {c}); }

Poly Poly::monomial(const Coeff& c, int exponent, std::string variable) {
    std::vector<Coeff> coeffs(static_cast<std::size_t>(exponent) + 1);
    coeffs.back() = c;
    return Poly(std::move(variable), std::move(coeffs));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

void Poly::require_same_variable(const Poly& o) const {
    if (var_ != o.var_)
        throw Error(ErrorKind::VariableMismatch, "polynomials in '" + var_ + "' and '" + o.var_ + "'");
}

int Poly::valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero())
            return static_cast<int>(k);
    return 0;
}

bool Poly::is_pure_rational() const {
    for (const auto& c : coeffs_)
        if (!c.is_rational())
            return false;
    return true;
}

std::set<std::string> Poly::atoms() const {
    std::set<std::string> out;
    for (const auto& c : coeffs_)
        for (const auto& a : c.atoms())
            out.insert(a);
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_variable(o);
    std::vector<Coeff> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = (*this)[k] + o[k];
    return Poly(var_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_variable(o);
    if (is_zero() || o.is_zero())
        return Poly(var_);
    std::vector<Coeff> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return Poly(var_, std::move(out));
}

Poly Poly::operator-() const { return scaled(Coeff(-1)); }

Poly Poly::scaled(const Coeff& c) const {
    std::vector<Coeff> out = coeffs_;
    for (auto& x : out)
        x *= c;
    return Poly(var_, std::move(out));
}

Poly Poly::shifted_up(int k) const {
    if (is_zero())
        return *this;
    std::vector<Coeff> out(static_cast<std::size_t>(k));
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return Poly(var_, std::move(out));
}

Poly Poly::shifted_down(int k) const {
    if (k > static_cast<int>(coeffs_.size()))
        return Poly(var_);
    return Poly(var_, std::vector<Coeff>(coeffs_.begin() + k, coeffs_.end()));
}

Poly Poly::compose(const Poly& inner) const {
    require_same_variable(inner);
    Poly out(var_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        out = out * inner + constant(*it, var_);
    return out;
}

Poly Poly::shift(long m) const { return compose(Poly(var_, {Coeff(-m), Coeff(1)})); }

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1)
        return Poly(var_);
    std::vector<Coeff> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out[k - 1] = coeffs_[k] * Coeff(static_cast<long>(k));
    return Poly(var_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    require_same_variable(divisor);
    if (divisor.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "polynomial division by zero");
    std::vector<Coeff> rest = coeffs_;
    const std::size_t dn = divisor.coeffs_.size();
    if (rest.size() < dn)
        return {Poly(var_), *this};
    std::vector<Coeff> quot(rest.size() - dn + 1);
    const Coeff lead = divisor.leading();
    for (std::size_t k = rest.size(); k-- >= dn;) {
        const Coeff factor = rest[k] / lead;
        quot[k - (dn - 1)] = factor;
        if (!factor.is_zero())
            for (std::size_t j = 0; j < dn; ++j)
                rest[k - (dn - 1) + j] -= factor * divisor.coeffs_[j];
        if (k == dn - 1)
            break;
    }
    rest.resize(dn - 1);
    return {Poly(var_, std::move(quot)), Poly(var_, std::move(rest))};
}

Coeff Poly::evaluate(const Coeff& at) const {
    Coeff out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        out = out * at + *it;
    return out;
}

Real Poly::evaluate_numeric(const Real& at, const Bindings& bindings) const {
    Real out = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        out = out * at + it->evaluate(bindings);
    return out;
}

Poly Poly::substitute(const Substitution& values) const {
    std::vector<Coeff> out = coeffs_;
    for (auto& c : out)
        c = c.substitute(values);
    return Poly(var_, std::move(out));
}

Poly Poly::with_variable(std::string variable) const { return Poly(std::move(variable), coeffs_); }

namespace {

std::string wrap_coeff(const Coeff& c) {
    const std::string s = c.str();
    if (c.is_rational() && c.rational().is_integer())
        return s;
    if (c.to_expr().kind() == CoeffExpr::Kind::Atom)
        return s;
    return "(" + s + ")";
}

} // namespace

std::string Poly::str() const {
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Coeff& c = coeffs_[k];
        if (c.is_zero())
            continue;
        std::string mono = k == 0 ? "" : (k == 1 ? var_ : var_ + "^" + std::to_string(k));
        std::string term;
        bool negative = false;
        if (c.is_rational()) {
            Rational r = c.rational();
            negative = r.sign() < 0;
            r = r.abs();
            if (mono.empty())
                term = r.str();
            else if (r.is_one())
                term = mono;
            else
                term = (r.is_integer() ? r.str() : "(" + r.str() + ")") + "*" + mono;
        } else {
            const CoeffExpr e = c.to_expr();
            // A product with a negative leading factor is printed as a subtraction.
            Coeff body = c;
            if (e.kind() == CoeffExpr::Kind::Product && c.str().front() == '-') {
                negative = true;
                body = -c;
            }
            term = mono.empty() ? body.str() : wrap_coeff(body) + "*" + mono;
            if (mono.empty() && body.to_expr().kind() == CoeffExpr::Kind::Sum)
                term = "(" + term + ")";
        }
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out;
}

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op, long shift_amount) {
    switch (op) {
    case PolyOp::Add:
        return p + q;
    case PolyOp::Mul:
        return p * q;
    case PolyOp::Compose:
        return p.compose(q);
    case PolyOp::Shift:
        return p.shift(shift_amount);
    }
    return p;
}

Poly rational_gcd(const Poly& a, const Poly& b) {
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero())
        return x;
    return x.scaled(Coeff(1) / x.leading());
}

// --- RationalFunction ------------------------------------------------------

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(Coeff(1), num_.variable())) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.variable() != den_.variable())
        throw Error(ErrorKind::VariableMismatch, "rational function in '" + num_.variable() + "' over '" + den_.variable() + "'");
    normalize();
}

RationalFunction RationalFunction::constant(const Coeff& c, std::string variable) {
    return RationalFunction(Poly::constant(c, std::move(variable)));
}

RationalFunction RationalFunction::laurent_monomial(const Coeff& c, int k, std::string variable) {
    if (k >= 0)
        return RationalFunction(Poly::monomial(c, k, variable));
    return RationalFunction(Poly::constant(c, variable), Poly::monomial(Coeff(1), -k, variable));
}

void RationalFunction::normalize() {
    if (den_.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(Coeff(1), num_.variable());
        return;
    }
    const int shared = std::min(num_.valuation(), den_.valuation());
    if (shared > 0) {
        num_ = num_.shifted_down(shared);
        den_ = den_.shifted_down(shared);
    }
    if (num_.is_pure_rational() && den_.is_pure_rational() && den_.degree() > 0) {
        const Poly g = rational_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
    }
    if (!den_.leading().is_one()) {
        const Coeff inv = Coeff(1) / den_.leading();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

std::set<std::string> RationalFunction::atoms() const {
    auto out = num_.atoms();
    for (const auto& a : den_.atoms())
        out.insert(a);
    return out;
}

Coeff RationalFunction::constant_value() const {
    if (!is_constant())
        throw Error(ErrorKind::DegenerateExpression, "rational function '" + str() + "' is not constant");
    return num_[0] / den_[0];
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (den_ == o.den_)
        return RationalFunction(num_ + o.num_, den_);
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "division by the zero rational function");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -num_;
    return out;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Coeff RationalFunction::evaluate(const Coeff& at) const {
    const Coeff d = den_.evaluate(at);
    if (d.is_zero())
        throw Error(ErrorKind::PoleAtEvaluationPoint, "'" + str() + "' has a pole at " + at.str());
    return num_.evaluate(at) / d;
}

Real RationalFunction::evaluate_numeric(const Real& at, const Bindings& bindings) const {
    const Real d = den_.evaluate_numeric(at, bindings);
    if (d == 0)
        throw Error(ErrorKind::PoleAtEvaluationPoint, "'" + str() + "' has a pole at the evaluation point");
    return num_.evaluate_numeric(at, bindings) / d;
}

RationalFunction RationalFunction::substitute(const Substitution& values) const {
    return RationalFunction(num_.substitute(values), den_.substitute(values));
}

std::string RationalFunction::str() const {
    if (is_polynomial())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.variable() != b.variable())
        return false;
    if (a.den_ == b.den_)
        return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

} // namespace recsum
