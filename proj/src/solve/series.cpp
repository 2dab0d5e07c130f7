#include "recsum/solve/series.hpp"

#include "recsum/core/error.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace recsum {

namespace {

// Raised inside the exact pass when a step has no exact value.
struct NeedNumeric {};

struct ExactField {
    using T = Coeff;
    T from(const Coeff& c) const { return c; }
    T exponent(const Coeff& e) const { return e; }
    T pow_constant(const T& b0, const Coeff& e) const {
        if (b0.is_one())
            return Coeff(1);
        if (e.is_rational() && e.rational().is_integer())
            return b0.pow(*e.rational().to_long());
        if (b0.is_rational() && e.is_rational() && b0.rational().sign() > 0)
            if (auto r = exact_pow(b0.rational(), e.rational()))
                return Coeff(*r);
        throw NeedNumeric{};
    }
    T exp_constant(const T& f0) const {
        if (f0.is_zero())
            return Coeff(1);
        throw NeedNumeric{};
    }
    static bool is_zero(const T& v) { return v.is_zero(); }
};

struct NumericField {
    using T = Real;
    const Bindings& bindings;
    T from(const Coeff& c) const { return c.evaluate(bindings); }
    T exponent(const Coeff& e) const { return e.evaluate(bindings); }
    T pow_constant(const T& b0, const Coeff& e) const {
        const Real v = e.evaluate(bindings);
        if (b0 < 0 && v != floor(v))
            throw Error(ErrorKind::PoleAtCenter, "negative base with a non-integer exponent at the center");
        return pow(b0, v);
    }
    T exp_constant(const T& f0) const { return exp(f0); }
    static bool is_zero(const T& v) { return v == 0; }
};

bool is_opaque(const std::string& atom, const std::string& var) {
    return atom.size() > var.size() + 2 && atom.compare(atom.size() - var.size() - 2, std::string::npos, "(" + var + ")") == 0;
}

template <typename F>
class Expander {
public:
    using T = typename F::T;
    Expander(F field, int K, std::string var) : f_(std::move(field)), K_(K), var_(std::move(var)) {}

    std::vector<T> run(const ClosedForm& cf) const {
        using Kind = ClosedForm::Kind;
        switch (cf.kind()) {
        case Kind::Rational: return leaf(cf.rational_function());
        case Kind::Sum: {
            std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
            for (const auto& c : cf.children()) {
                const auto s = run(c);
                for (int i = 0; i <= K_; ++i)
                    out[i] += s[i];
            }
            return out;
        }
        case Kind::Product: {
            std::vector<T> out = constant(Coeff(1));
            for (const auto& c : cf.children())
                out = multiply(out, run(c));
            return out;
        }
        case Kind::Power: return power(run(cf.children()[0]), cf.exponent());
        case Kind::Exp: return exponential(run(cf.children()[0]));
        case Kind::Integral:
            throw Error(ErrorKind::UnexpandableNode, "integral node cannot be expanded: " + cf.str());
        }
        return constant(Coeff(0));
    }

private:
    std::vector<T> constant(const Coeff& c) const {
        std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
        out[0] = f_.from(c);
        return out;
    }

    std::vector<T> leaf(const RationalFunction& r) const {
        for (const auto& a : r.atoms())
            if (is_opaque(a, var_))
                throw Error(ErrorKind::UnexpandableNode, "opaque symbol " + a + " cannot be expanded");
        if (r.is_constant())
            return constant(r.constant_value());
        if (r.variable() != var_)
            throw Error(ErrorKind::VariableMismatch, "leaf in '" + r.variable() + "' expanded in '" + var_ + "'");
        const Poly& num = r.numerator();
        const Poly& den = r.denominator();
        const int vd = den.valuation();
        if (num.valuation() < vd)
            throw Error(ErrorKind::PoleAtCenter, "pole at 0 in " + r.str());
        auto coeff_of = [&](const Poly& p, int i) { return i >= 0 && i <= p.degree() ? f_.from(p[i]) : f_.from(Coeff(0)); };
        const T d0 = coeff_of(den, vd);
        std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
        for (int n = 0; n <= K_; ++n) {
            T acc = coeff_of(num, n + vd);
            for (int k = 1; k <= n && k + vd <= den.degree(); ++k)
                acc -= coeff_of(den, k + vd) * out[n - k];
            out[n] = acc / d0;
        }
        return out;
    }

    std::vector<T> multiply(const std::vector<T>& a, const std::vector<T>& b) const {
        std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
        for (int i = 0; i <= K_; ++i) {
            if (F::is_zero(a[i]))
                continue;
            for (int j = 0; i + j <= K_; ++j)
                out[i + j] += a[i] * b[j];
        }
        return out;
    }

    std::vector<T> power(const std::vector<T>& b, const Coeff& e) const {
        const bool integer = e.is_rational() && e.rational().is_integer();
        if (integer && e.rational().sign() >= 0) {
            std::vector<T> out = constant(Coeff(1));
            std::vector<T> base = b;
            for (long k = *e.rational().to_long(); k > 0; k >>= 1) {
                if (k & 1)
                    out = multiply(out, base);
                if (k > 1)
                    base = multiply(base, base);
            }
            return out;
        }
        if (F::is_zero(b[0]))
            throw Error(ErrorKind::PoleAtCenter, "power with a vanishing base at 0");
        // c_n = 1/(n b0) sum_k ((e+1)k - n) b_k c_{n-k}
        const T ev = f_.exponent(e);
        std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
        out[0] = f_.pow_constant(b[0], e);
        for (int n = 1; n <= K_; ++n) {
            T acc = f_.from(Coeff(0));
            for (int k = 1; k <= n; ++k) {
                if (F::is_zero(b[k]))
                    continue;
                acc += ((ev + f_.from(Coeff(1))) * f_.from(Coeff(k)) - f_.from(Coeff(n))) * b[k] * out[n - k];
            }
            out[n] = acc / (f_.from(Coeff(n)) * b[0]);
        }
        return out;
    }

    std::vector<T> exponential(const std::vector<T>& a) const {
        // g_n = (1/n) sum_k k a_k g_{n-k}
        std::vector<T> out(K_ + 1, f_.from(Coeff(0)));
        out[0] = f_.exp_constant(a[0]);
        for (int n = 1; n <= K_; ++n) {
            T acc = f_.from(Coeff(0));
            for (int k = 1; k <= n; ++k)
                if (!F::is_zero(a[k]))
                    acc += f_.from(Coeff(k)) * a[k] * out[n - k];
            out[n] = acc / f_.from(Coeff(n));
        }
        return out;
    }

    F f_;
    int K_;
    std::string var_;
};

// Two-sided window of coefficients for exponents -W..W.
struct Window {
    int W;
    std::vector<Real> c;
    explicit Window(int w) : W(w), c(2 * w + 1, Real(0)) {}
    Real& at(long n) { return c[n + W]; }
    Real get(long n) const { return n < -W || n > W ? Real(0) : c[n + W]; }
};

class BilateralExpander {
public:
    BilateralExpander(const Bindings& b, int W, std::string var) : bindings_(b), W_(W), var_(std::move(var)) {}

    Window run(const ClosedForm& cf) const {
        using Kind = ClosedForm::Kind;
        switch (cf.kind()) {
        case Kind::Rational: return leaf(cf.rational_function());
        case Kind::Sum: {
            Window out(W_);
            for (const auto& c : cf.children()) {
                const Window s = run(c);
                for (std::size_t i = 0; i < out.c.size(); ++i)
                    out.c[i] += s.c[i];
            }
            return out;
        }
        case Kind::Product: {
            Window out = unit();
            for (const auto& c : cf.children())
                out = multiply(out, run(c));
            return out;
        }
        case Kind::Power: {
            const Coeff& e = cf.exponent();
            if (!(e.is_rational() && e.rational().is_integer() && e.rational().sign() >= 0))
                throw Error(ErrorKind::UnsupportedShape, "bilateral expansion needs nonnegative integer powers");
            Window out = unit();
            const Window base = run(cf.children()[0]);
            for (long k = *e.rational().to_long(); k > 0; --k)
                out = multiply(out, base);
            return out;
        }
        case Kind::Exp: return exponential(run(cf.children()[0]));
        case Kind::Integral:
            throw Error(ErrorKind::UnexpandableNode, "integral node cannot be expanded: " + cf.str());
        }
        return Window(W_);
    }

private:
    Window unit() const {
        Window w(W_);
        w.at(0) = 1;
        return w;
    }

    Window leaf(const RationalFunction& r) const {
        for (const auto& a : r.atoms())
            if (is_opaque(a, var_))
                throw Error(ErrorKind::UnexpandableNode, "opaque symbol " + a + " cannot be expanded");
        Window out(W_);
        if (r.is_constant()) {
            out.at(0) = r.constant_value().evaluate(bindings_);
            return out;
        }
        const Poly& den = r.denominator();
        const int v = den.valuation();
        if (den.degree() != v)
            throw Error(ErrorKind::UnsupportedShape, "bilateral expansion needs Laurent polynomial leaves: " + r.str());
        const Real d = den[v].evaluate(bindings_);
        const Poly& num = r.numerator();
        for (int i = 0; i <= num.degree(); ++i)
            if (!num[i].is_zero() && std::abs(i - v) <= W_)
                out.at(i - v) = num[i].evaluate(bindings_) / d;
        return out;
    }

    Window multiply(const Window& a, const Window& b) const {
        Window out(W_);
        for (long i = -W_; i <= W_; ++i) {
            const Real& ai = a.c[i + W_];
            if (ai == 0)
                continue;
            for (long j = std::max<long>(-W_, -W_ - i); j <= std::min<long>(W_, W_ - i); ++j)
                out.at(i + j) += ai * b.c[j + W_];
        }
        return out;
    }

    // exp of a one-sided series s_1 y + s_2 y^2 + ...
    std::vector<Real> exp_one_sided(const std::vector<Real>& s) const {
        std::vector<Real> g(W_ + 1, Real(0));
        g[0] = 1;
        for (int n = 1; n <= W_; ++n) {
            Real acc = 0;
            for (int k = 1; k <= n; ++k)
                if (s[k] != 0)
                    acc += k * s[k] * g[n - k];
            g[n] = acc / n;
        }
        return g;
    }

    Window exponential(const Window& f) const {
        std::vector<Real> pos(W_ + 1, Real(0));
        std::vector<Real> neg(W_ + 1, Real(0));
        for (int k = 1; k <= W_; ++k) {
            pos[k] = f.get(k);
            neg[k] = f.get(-k);
        }
        const std::vector<Real> P = exp_one_sided(pos);
        const std::vector<Real> Q = exp_one_sided(neg);
        const Real scale = exp(f.get(0));
        Window out(W_);
        for (long n = -W_; n <= W_; ++n) {
            Real acc = 0;
            // P_j Q_k with j - k = n
            for (long k = std::max<long>(0, -n); k <= W_ && k + n <= W_; ++k)
                acc += P[k + n] * Q[k];
            out.at(n) = scale * acc;
        }
        return out;
    }

    const Bindings& bindings_;
    int W_;
    std::string var_;
};

} // namespace

Real SeriesExpansion::numeric(std::size_t i, const Bindings& bindings) const {
    if (!exact)
        return numeric_coeffs.at(i);
    PrecisionScope scope(precision_bits);
    return exact_coeffs.at(i).evaluate(bindings);
}

SeriesExpansion expand_series(const ClosedForm& cf, int K, const Bindings& bindings, unsigned precision_bits,
                              const std::string& variable) {
    if (K < 0)
        throw Error(ErrorKind::DegenerateExpression, "series order must be nonnegative");
    SeriesExpansion out;
    out.order = K;
    out.precision_bits = precision_bits;
    try {
        out.exact_coeffs = Expander<ExactField>(ExactField{}, K, variable).run(cf);
        return out;
    } catch (const NeedNumeric&) {
    }
    PrecisionScope scope(precision_bits);
    out.exact = false;
    out.numeric_coeffs = Expander<NumericField>(NumericField{bindings}, K, variable).run(cf);
    return out;
}

Real BilateralExpansion::coefficient(long n) const {
    const long i = n - low;
    if (i < 0 || i >= static_cast<long>(coeffs.size()))
        return Real(0);
    return coeffs[i];
}

BilateralExpansion expand_bilateral(const ClosedForm& cf, int K, const Bindings& bindings, unsigned precision_bits,
                                    int margin, const std::string& variable) {
    if (K < 0 || margin < 0)
        throw Error(ErrorKind::DegenerateExpression, "bilateral window must be nonnegative");
    PrecisionScope scope(precision_bits);
    const Window w = BilateralExpander(bindings, K + margin, variable).run(cf);
    BilateralExpansion out;
    out.low = -K;
    for (long n = -K; n <= K; ++n)
        out.coeffs.push_back(w.get(n));
    return out;
}

} // namespace recsum
