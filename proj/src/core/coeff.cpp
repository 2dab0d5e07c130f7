#include "recsum/core/coeff.hpp"

#include "recsum/core/error.hpp"

#include <algorithm>
#include <sstream>

namespace recsum {

namespace {

Monomial mul_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first))
            out.push_back(*i++);
        else if (i == a.end() || j->first < i->first)
            out.push_back(*j++);
        else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

// a / b if b divides a.
std::optional<Monomial> div_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    auto i = a.begin();
    for (const auto& [name, e] : b) {
        while (i != a.end() && i->first < name)
            out.push_back(*i++);
        if (i == a.end() || i->first != name || i->second < e)
            return std::nullopt;
        if (i->second > e)
            out.emplace_back(name, i->second - e);
        ++i;
    }
    out.insert(out.end(), i, a.end());
    return out;
}

int degree_of(const Monomial& m) {
    int d = 0;
    for (const auto& [_, e] : m)
        d += e;
    return d;
}

// Graded lexicographic order with atoms ordered by name.
bool grlex_less(const Monomial& a, const Monomial& b) {
    const int da = degree_of(a);
    const int db = degree_of(b);
    if (da != db)
        return da < db;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->first != j->first)
            return i->first > j->first;
        if (i->second != j->second)
            return i->second < j->second;
        ++i;
        ++j;
    }
    return i == a.end() && j != b.end();
}

using Dense = std::vector<Rational>;

void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

Dense dense_rem(Dense a, const Dense& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            a[shift + k] -= factor * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

Dense dense_gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense r = dense_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a)
            c /= lead;
    }
    return a;
}

std::optional<Dense> to_dense(const MPoly& p, const std::string& atom) {
    Dense out;
    for (const auto& [m, c] : p.terms()) {
        int e = 0;
        if (!m.empty()) {
            if (m.size() != 1 || m.front().first != atom)
                return std::nullopt;
            e = m.front().second;
        }
        if (out.size() <= static_cast<std::size_t>(e))
            out.resize(e + 1);
        out[e] = c;
    }
    return out;
}

MPoly from_dense(const Dense& p, const std::string& atom) {
    MPoly out;
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (p[e].is_zero())
            continue;
        Monomial m;
        if (e > 0)
            m.emplace_back(atom, static_cast<int>(e));
        out = out + MPoly(Rational(1)).times_monomial(m, p[e]);
    }
    return out;
}

Real eval_mpoly(const MPoly& p, const Bindings& bindings) {
    Real total = 0;
    for (const auto& [m, c] : p.terms()) {
        Real term = to_real(c);
        for (const auto& [name, e] : m) {
            auto it = bindings.find(name);
            if (it == bindings.end())
                throw Error(ErrorKind::UnboundConstant, "atom '" + name + "' has no binding");
            term *= pow(it->second, e);
        }
        total += term;
    }
    return total;
}

} // namespace

// --- MPoly -----------------------------------------------------------------

MPoly::MPoly(const Rational& constant) {
    if (!constant.is_zero())
        terms_.emplace(Monomial{}, constant);
}

MPoly MPoly::atom(const std::string& name) {
    MPoly p;
    p.terms_.emplace(Monomial{{name, 1}}, Rational(1));
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MPoly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> MPoly::atoms() const {
    std::set<std::string> out;
    for (const auto& [m, _] : terms_)
        for (const auto& [name, e] : m)
            out.insert(name);
    return out;
}

std::pair<Monomial, Rational> MPoly::leading() const {
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
        if (grlex_less(best->first, it->first))
            best = it;
    return *best;
}

int MPoly::total_degree() const {
    int d = 0;
    for (const auto& [m, _] : terms_)
        d = std::max(d, degree_of(m));
    return d;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, c);
    return out;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, -c);
    return out;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            out.add_term(mul_monomials(ma, mb), ca * cb);
    return out;
}

MPoly MPoly::operator-() const { return scaled(Rational(-1)); }

MPoly MPoly::scaled(const Rational& factor) const {
    if (factor.is_zero())
        return {};
    MPoly out = *this;
    for (auto& [_, c] : out.terms_)
        c *= factor;
    return out;
}

MPoly MPoly::times_monomial(const Monomial& m, const Rational& c) const {
    MPoly out;
    for (const auto& [mt, ct] : terms_)
        out.add_term(mul_monomials(mt, m), ct * c);
    return out;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
    if (divisor.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "polynomial division by zero");
    const auto [lead_m, lead_c] = divisor.leading();
    MPoly quotient;
    MPoly rest = *this;
    while (!rest.is_zero()) {
        const auto [m, c] = rest.leading();
        auto q = div_monomials(m, lead_m);
        if (!q)
            return std::nullopt;
        const Rational qc = c / lead_c;
        quotient.add_term(*q, qc);
        rest = rest - divisor.times_monomial(*q, qc);
    }
    return quotient;
}

Monomial MPoly::monomial_content() const {
    if (terms_.empty())
        return {};
    Monomial common = terms_.begin()->first;
    for (const auto& [m, _] : terms_) {
        Monomial next;
        for (const auto& [name, e] : common) {
            auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == name; });
            if (it != m.end())
                next.emplace_back(name, std::min(e, it->second));
        }
        common = std::move(next);
    }
    return common;
}

MPoly MPoly::divide_monomial(const Monomial& m) const {
    MPoly out;
    for (const auto& [mt, c] : terms_)
        out.add_term(*div_monomials(mt, m), c);
    return out;
}

// --- Coeff -----------------------------------------------------------------

Coeff Coeff::atom(const std::string& name) {
    Coeff c;
    c.num_ = MPoly::atom(name);
    return c;
}

bool Coeff::den_is_one() const {
    return den_.terms().size() == 1 && den_.terms().begin()->first.empty() && den_.terms().begin()->second.is_one();
}

Coeff Coeff::fraction(MPoly num, MPoly den) {
    if (den.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "quotient with zero denominator");
    Coeff out;
    if (num.is_zero())
        return out;
    if (den.is_constant()) {
        out.num_ = num.scaled(den.constant_term().inverse());
        return out;
    }

    const Monomial num_content = num.monomial_content();
    const Monomial den_content = den.monomial_content();
    Monomial shared;
    for (const auto& [name, e] : den_content)
        for (const auto& [n2, e2] : num_content)
            if (n2 == name)
                shared.emplace_back(name, std::min(e, e2));
    if (!shared.empty()) {
        num = num.divide_monomial(shared);
        den = den.divide_monomial(shared);
    }

    std::set<std::string> names = num.atoms();
    for (const auto& n : den.atoms())
        names.insert(n);
    if (names.size() == 1) {
        const std::string& t = *names.begin();
        auto g = dense_gcd(*to_dense(num, t), *to_dense(den, t));
        if (g.size() > 1) {
            const MPoly gp = from_dense(g, t);
            num = *num.divide_exact(gp);
            den = *den.divide_exact(gp);
        }
    } else if (auto q = num.divide_exact(den)) {
        num = std::move(*q);
        den = MPoly(Rational(1));
    } else if (auto q2 = den.divide_exact(num)) {
        den = std::move(*q2);
        num = MPoly(Rational(1));
    }

    if (den.is_constant()) {
        out.num_ = num.scaled(den.constant_term().inverse());
        return out;
    }
    const Rational lead = den.leading().second;
    out.num_ = num.scaled(lead.inverse());
    out.den_ = den.scaled(lead.inverse());
    return out;
}

Rational Coeff::rational() const {
    if (!is_rational())
        throw Error(ErrorKind::DegenerateExpression, "expression '" + str() + "' is not a pure rational");
    return num_.constant_term();
}

std::optional<Rational> Coeff::as_rational() const {
    if (!is_rational())
        return std::nullopt;
    return num_.constant_term();
}

std::set<std::string> Coeff::atoms() const {
    auto out = num_.atoms();
    for (const auto& n : den_.atoms())
        out.insert(n);
    return out;
}

Coeff Coeff::operator+(const Coeff& o) const {
    if (den_is_one() && o.den_is_one()) {
        Coeff out;
        out.num_ = num_ + o.num_;
        return out;
    }
    if (den_ == o.den_)
        return fraction(num_ + o.num_, den_);
    return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    if (den_is_one() && o.den_is_one()) {
        Coeff out;
        out.num_ = num_ * o.num_;
        return out;
    }
    return fraction(num_ * o.num_, den_ * o.den_);
}

Coeff Coeff::operator/(const Coeff& o) const {
    if (o.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "division by zero expression");
    if (o.is_rational()) {
        Coeff out = *this;
        out.num_ = num_.scaled(o.rational().inverse());
        return out;
    }
    return fraction(num_ * o.den_, den_ * o.num_);
}

Coeff Coeff::operator-() const {
    Coeff out = *this;
    out.num_ = -num_;
    return out;
}

Coeff Coeff::pow(long exponent) const {
    if (exponent < 0)
        return Coeff(1) / pow(-exponent);
    Coeff result(1);
    Coeff base = *this;
    while (exponent > 0) {
        if (exponent & 1)
            result *= base;
        exponent >>= 1;
        if (exponent)
            base *= base;
    }
    return result;
}

namespace {

Coeff substitute_mpoly(const MPoly& p, const Substitution& values) {
    Coeff total;
    for (const auto& [m, c] : p.terms()) {
        Coeff term(c);
        MPoly kept(Rational(1));
        Monomial kept_m;
        for (const auto& [name, e] : m) {
            auto it = values.find(name);
            if (it == values.end())
                kept_m.emplace_back(name, e);
            else
                term *= it->second.pow(e);
        }
        if (!kept_m.empty())
            term *= Coeff::fraction(kept.times_monomial(kept_m, 1), MPoly(Rational(1)));
        total += term;
    }
    return total;
}

} // namespace

Coeff Coeff::substitute(const Substitution& values) const {
    if (values.empty() || is_rational())
        return *this;
    return substitute_mpoly(num_, values) / substitute_mpoly(den_, values);
}

Real Coeff::evaluate(const Bindings& bindings) const {
    const Real den = eval_mpoly(den_, bindings);
    if (den == 0)
        throw Error(ErrorKind::PoleAtEvaluationPoint, "denominator of '" + str() + "' vanishes");
    return eval_mpoly(num_, bindings) / den;
}

bool operator==(const Coeff& a, const Coeff& b) {
    if (a.den_is_one() && b.den_is_one())
        return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

namespace {

CoeffExpr mpoly_expr(const MPoly& p) {
    if (p.is_zero())
        return CoeffExpr::rational(0);
    std::vector<std::pair<Monomial, Rational>> ordered(p.terms().begin(), p.terms().end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
    std::vector<CoeffExpr> terms;
    for (const auto& [m, c] : ordered) {
        std::vector<CoeffExpr> factors;
        if (m.empty() || !c.is_one())
            factors.push_back(CoeffExpr::rational(c));
        for (const auto& [name, e] : m)
            factors.push_back(e == 1 ? CoeffExpr::atom(name) : CoeffExpr::power(CoeffExpr::atom(name), e));
        terms.push_back(factors.size() == 1 ? factors.front() : CoeffExpr::product(std::move(factors)));
    }
    return terms.size() == 1 ? terms.front() : CoeffExpr::sum(std::move(terms));
}

} // namespace

CoeffExpr Coeff::to_expr() const {
    if (den_is_one())
        return mpoly_expr(num_);
    return CoeffExpr::quotient(mpoly_expr(num_), mpoly_expr(den_));
}

std::string Coeff::str() const { return to_expr().str(); }

// --- CoeffExpr -------------------------------------------------------------

CoeffExpr CoeffExpr::rational(const Rational& value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Rational;
    n->value = value;
    return CoeffExpr(std::move(n));
}

CoeffExpr CoeffExpr::atom(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = name;
    return CoeffExpr(std::move(n));
}

CoeffExpr CoeffExpr::sum(std::vector<CoeffExpr> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->children = std::move(terms);
    return CoeffExpr(std::move(n));
}

CoeffExpr CoeffExpr::product(std::vector<CoeffExpr> factors) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(factors);
    return CoeffExpr(std::move(n));
}

CoeffExpr CoeffExpr::quotient(CoeffExpr num, CoeffExpr den) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Quotient;
    n->children = {std::move(num), std::move(den)};
    return CoeffExpr(std::move(n));
}

CoeffExpr CoeffExpr::power(CoeffExpr base, long exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->children = {std::move(base)};
    n->exponent = exponent;
    return CoeffExpr(std::move(n));
}

Coeff CoeffExpr::to_coeff() const {
    switch (kind()) {
    case Kind::Rational:
        return Coeff(value());
    case Kind::Atom:
        return Coeff::atom(name());
    case Kind::Sum: {
        Coeff total;
        for (const auto& c : children())
            total += c.to_coeff();
        return total;
    }
    case Kind::Product: {
        Coeff total(1);
        for (const auto& c : children())
            total *= c.to_coeff();
        return total;
    }
    case Kind::Quotient: {
        const Coeff den = children()[1].to_coeff();
        if (den.is_zero())
            throw Error(ErrorKind::DegenerateExpression, "quotient '" + str() + "' divides by zero");
        return children()[0].to_coeff() / den;
    }
    case Kind::Power: {
        const Coeff base = children()[0].to_coeff();
        if (base.is_zero() && exponent() < 0)
            throw Error(ErrorKind::DegenerateExpression, "negative power of zero in '" + str() + "'");
        return base.pow(exponent());
    }
    }
    return {};
}

namespace {

bool needs_parens_in_product(const CoeffExpr& e) {
    return e.kind() == CoeffExpr::Kind::Sum || e.kind() == CoeffExpr::Kind::Quotient ||
           (e.kind() == CoeffExpr::Kind::Rational && (!e.value().is_integer() || e.value().sign() < 0));
}

} // namespace

std::string CoeffExpr::str() const {
    switch (kind()) {
    case Kind::Rational:
        return value().str();
    case Kind::Atom:
        return name();
    case Kind::Sum: {
        std::string out;
        for (std::size_t i = 0; i < children().size(); ++i) {
            std::string s = children()[i].str();
            if (i == 0)
                out = s;
            else if (!s.empty() && s.front() == '-')
                out += " - " + s.substr(1);
            else
                out += " + " + s;
        }
        return out;
    }
    case Kind::Product: {
        std::string out;
        for (std::size_t i = 0; i < children().size(); ++i) {
            const auto& c = children()[i];
            std::string s = c.str();
            // A leading integer coefficient reads fine without parentheses.
            const bool lead_int = i == 0 && c.kind() == Kind::Rational && c.value().is_integer();
            if (i == 0 && c.kind() == Kind::Rational && c.value() == Rational(-1) && children().size() > 1) {
                out = "-";
                continue;
            }
            if (!lead_int && needs_parens_in_product(c))
                s = "(" + s + ")";
            if (!out.empty() && out != "-")
                out += "*";
            out += s;
        }
        return out;
    }
    case Kind::Quotient:
        return "(" + children()[0].str() + ")/(" + children()[1].str() + ")";
    case Kind::Power: {
        const auto& b = children()[0];
        std::string s = b.str();
        if (b.kind() != Kind::Atom && !(b.kind() == Kind::Rational && b.value().is_integer() && b.value().sign() >= 0))
            s = "(" + s + ")";
        return s + "^" + std::to_string(exponent());
    }
    }
    return {};
}

bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case CoeffExpr::Kind::Rational:
        return a.value() == b.value();
    case CoeffExpr::Kind::Atom:
        return a.name() == b.name();
    case CoeffExpr::Kind::Power:
        return a.exponent() == b.exponent() && a.children()[0] == b.children()[0];
    default:
        return a.children() == b.children();
    }
}

CoeffExpr normalize(const CoeffExpr& expr) { return expr.to_coeff().to_expr(); }

namespace {

using ExactBindings = std::map<std::string, Rational, std::less<>>;

Rational eval_tree(const CoeffExpr& e, const ExactBindings& bindings) {
    using Kind = CoeffExpr::Kind;
    switch (e.kind()) {
    case Kind::Rational:
        return e.value();
    case Kind::Atom: {
        auto it = bindings.find(e.name());
        if (it == bindings.end())
            throw Error(ErrorKind::UnboundConstant, "atom '" + e.name() + "' has no binding");
        return it->second;
    }
    case Kind::Sum: {
        Rational total;
        for (const auto& c : e.children())
            total += eval_tree(c, bindings);
        return total;
    }
    case Kind::Product: {
        Rational total(1);
        for (const auto& c : e.children())
            total *= eval_tree(c, bindings);
        return total;
    }
    case Kind::Quotient: {
        const Rational den = eval_tree(e.children()[1], bindings);
        if (den.is_zero())
            throw Error(ErrorKind::PoleAtEvaluationPoint, "denominator of '" + e.str() + "' evaluates to 0");
        return eval_tree(e.children()[0], bindings) / den;
    }
    case Kind::Power: {
        const Rational base = eval_tree(e.children()[0], bindings);
        if (base.is_zero() && e.exponent() < 0)
            throw Error(ErrorKind::PoleAtEvaluationPoint, "negative power of zero in '" + e.str() + "'");
        return base.pow(e.exponent());
    }
    }
    return {};
}

void collect_atoms(const CoeffExpr& e, std::set<std::string>& out) {
    if (e.kind() == CoeffExpr::Kind::Atom)
        out.insert(e.name());
    for (const auto& c : e.children())
        collect_atoms(c, out);
}

} // namespace

Rational to_exact(const Real& value) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), value.backend().data());
    return Rational(q);
}

// Bound values are binary floating-point numbers, hence exact dyadic
// rationals; the tree is evaluated exactly and rounded once.
Real eval_numeric(const CoeffExpr& expr, const Bindings& bindings, unsigned precision_bits) {
    std::set<std::string> names;
    collect_atoms(expr, names);
    ExactBindings exact;
    for (const auto& name : names) {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw Error(ErrorKind::UnboundConstant, "atom '" + name + "' has no binding");
        exact.emplace(name, to_exact(it->second));
    }
    const Rational value = eval_tree(expr, exact);
    PrecisionScope scope(precision_bits);
    return to_real(value);
}

} // namespace recsum
