#include "recsum/core/partial_fractions.hpp"

#include <algorithm>

namespace recsum {

namespace {

// Positive divisors of |n|; n != 0. Trial division is adequate for the
// coefficient sizes that occur in practice.
std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, int>> factors;
    for (mpz_class p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
    }
    if (n > 1)
        factors.emplace_back(n, 1);
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Divides p by (x - r) if r is a root.
std::optional<Poly> deflate(const Poly& p, const Rational& r) {
    if (!p.evaluate(Coeff(r)).is_zero())
        return std::nullopt;
    return p.divmod(Poly(p.variable(), {Coeff(-r), Coeff(1)})).first;
}

Poly linear_power(const Rational& root, int k, const std::string& var) {
    Poly out = Poly::constant(Coeff(1), var);
    const Poly lin(var, {Coeff(-root), Coeff(1)});
    for (int i = 0; i < k; ++i)
        out = out * lin;
    return out;
}

// First `count` Taylor coefficients of num(r + u)/den(r + u) about u = 0.
std::vector<Coeff> local_expansion(const Poly& num, const Poly& den, const Rational& r, int count) {
    const std::string& var = num.variable();
    const Poly move(var, {Coeff(r), Coeff(1)});
    const Poly n = num.compose(move);
    const Poly d = den.compose(move);
    std::vector<Coeff> q(static_cast<std::size_t>(count));
    const Coeff d0 = d[0];
    for (int k = 0; k < count; ++k) {
        Coeff acc = n[k];
        for (int j = 1; j <= k; ++j)
            acc -= d[j] * q[k - j];
        q[k] = acc / d0;
    }
    return q;
}

} // namespace

RationalRoots rational_roots(const Poly& p) {
    RationalRoots out;
    Poly rest = p;
    if (rest.is_zero() || !rest.is_pure_rational()) {
        out.remainder = rest;
        return out;
    }
    if (const int v = rest.valuation(); v > 0) {
        out.roots.emplace_back(Rational(0), v);
        rest = rest.shifted_down(v);
    }
    if (rest.degree() <= 0) {
        out.remainder = rest;
        return out;
    }
    mpz_class scale = 1;
    for (const auto& c : rest.coeffs())
        scale = lcm(scale, c.rational().denominator());
    const mpz_class a0 = (rest[0].rational() * Rational(scale)).numerator();
    const mpz_class an = (rest.leading().rational() * Rational(scale)).numerator();
    const mpz_class search_limit("1000000000000000000");
    if (abs(a0) > search_limit || abs(an) > search_limit) {
        out.remainder = rest;
        return out;
    }
    std::vector<Rational> candidates;
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an)) {
            candidates.emplace_back(num, den);
            candidates.emplace_back(-num, den);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        int mult = 0;
        while (rest.degree() > 0) {
            auto next = deflate(rest, r);
            if (!next)
                break;
            rest = std::move(*next);
            ++mult;
        }
        if (mult)
            out.roots.emplace_back(r, mult);
        if (rest.degree() <= 0)
            break;
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.remainder = rest;
    return out;
}

PartialFractions partial_fractions(const RationalFunction& r) {
    const Poly& num = r.numerator();
    const Poly& den = r.denominator();
    const std::string& var = r.variable();
    if (!den.is_pure_rational())
        throw UnsupportedDenominator("denominator '" + den.str() + "' has symbolic coefficients", den);

    PartialFractions out;
    auto [poly_part, proper] = num.divmod(den);
    out.polynomial_part = poly_part;
    if (proper.is_zero() || den.degree() == 0)
        return out;

    const RationalRoots found = rational_roots(den);
    if (found.remainder.degree() > 0)
        throw UnsupportedDenominator("denominator '" + den.str() + "' has no rational factorization; left with '" +
                                         found.remainder.str() + "'",
                                     found.remainder);
    const Coeff lead = den.leading();

    for (std::size_t i = 0; i < found.roots.size(); ++i) {
        const auto& [root, mult] = found.roots[i];
        Poly cofactor = Poly::constant(lead, var);
        for (std::size_t j = 0; j < found.roots.size(); ++j)
            if (j != i)
                cofactor = cofactor * linear_power(found.roots[j].first, found.roots[j].second, var);
        const std::vector<Coeff> local = local_expansion(proper, cofactor, root, mult);
        if (root.is_zero()) {
            for (int l = 0; l < mult; ++l)
                if (!local[l].is_zero())
                    out.laurent_part.emplace_back(-(mult - l), local[l]);
            std::sort(out.laurent_part.begin(), out.laurent_part.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        } else {
            PoleTerm term{root, mult, std::vector<Coeff>(static_cast<std::size_t>(mult))};
            for (int l = 0; l < mult; ++l)
                term.coeffs[mult - l - 1] = local[l];
            out.pole_terms.push_back(std::move(term));
        }
    }
    return out;
}

RationalFunction PartialFractions::recombine() const {
    const std::string& var = polynomial_part.variable();
    RationalFunction total(polynomial_part);
    for (const auto& [e, c] : laurent_part)
        total = total + RationalFunction::laurent_monomial(c, e, var);
    for (const auto& pole : pole_terms)
        for (int l = 1; l <= pole.multiplicity; ++l)
            total = total + RationalFunction(Poly::constant(pole.coeffs[l - 1], var), linear_power(pole.root, l, var));
    return total;
}

RationalIntegral integrate_rational(const RationalFunction& r) {
    const PartialFractions pf = partial_fractions(r);
    RationalIntegral out;
    out.variable = r.variable();

    std::vector<Coeff> poly;
    poly.emplace_back();
    for (std::size_t k = 0; k < pf.polynomial_part.coeffs().size(); ++k)
        poly.push_back(pf.polynomial_part.coeffs()[k] / Coeff(static_cast<long>(k + 1)));
    out.antiderivative_poly = Poly(out.variable, std::move(poly));

    for (const auto& [e, c] : pf.laurent_part) {
        if (e == -1)
            out.log_terms.push_back({Rational(0), c});
        else
            out.antiderivative_laurent.push_back({Rational(0), e + 1, c / Coeff(static_cast<long>(e + 1))});
    }
    for (const auto& pole : pf.pole_terms) {
        for (int l = 1; l <= pole.multiplicity; ++l) {
            const Coeff& c = pole.coeffs[l - 1];
            if (c.is_zero())
                continue;
            if (l == 1)
                out.log_terms.push_back({pole.root, c});
            else
                out.antiderivative_laurent.push_back({pole.root, 1 - l, c / Coeff(static_cast<long>(1 - l))});
        }
    }
    std::sort(out.log_terms.begin(), out.log_terms.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
    return out;
}

RationalFunction RationalIntegral::rational_part() const {
    RationalFunction total(antiderivative_poly);
    for (const auto& piece : antiderivative_laurent)
        total = total + RationalFunction(Poly::constant(piece.coeff, variable), linear_power(piece.root, -piece.exponent, variable));
    return total;
}

RationalFunction RationalIntegral::derivative() const {
    RationalFunction total = rational_part().derivative();
    for (const auto& log : log_terms)
        total = total + RationalFunction(Poly::constant(log.coeff, variable), linear_power(log.root, 1, variable));
    return total;
}

} // namespace recsum
