#pragma once

// Seeded generators shared by the property tests and the acceptance suite.

#include "recsum/core/poly.hpp"
#include "recsum/dsl/recurrence.hpp"

#include <random>
#include <set>

namespace recsum::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long max_num = 9, long max_den = 6) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

inline Rational random_nonzero_rational(Rng& rng, long max_num = 9, long max_den = 6) {
    for (;;) {
        Rational r = random_rational(rng, max_num, max_den);
        if (!r.is_zero())
            return r;
    }
}

inline Poly random_poly(Rng& rng, int degree, const std::string& var = "x") {
    std::vector<Coeff> coeffs;
    for (int k = 0; k <= degree; ++k)
        coeffs.emplace_back(random_rational(rng));
    if (degree >= 0)
        coeffs.back() = Coeff(random_nonzero_rational(rng));
    return Poly(var, std::move(coeffs));
}

/// Random rational function whose denominator splits into 1..4 rational
/// linear factors (multiplicity up to 3, zero allowed as a root).
inline RationalFunction random_linear_pole_function(Rng& rng) {
    std::uniform_int_distribution<int> nfactors(1, 4);
    std::uniform_int_distribution<int> mult(1, 3);
    std::set<Rational> roots;
    Poly den = Poly::constant(Coeff(random_nonzero_rational(rng)));
    const int count = nfactors(rng);
    while (static_cast<int>(roots.size()) < count) {
        Rational r = random_rational(rng, 6, 4);
        if (!roots.insert(r).second)
            continue;
        const int m = mult(rng);
        for (int k = 0; k < m; ++k)
            den = den * Poly("x", {Coeff(-r), Coeff(1)});
    }
    std::uniform_int_distribution<int> extra(-2, 2);
    const int num_degree = std::max(0, den.degree() + extra(rng));
    return RationalFunction(random_poly(rng, num_degree), den);
}

/// Finite-range recurrence with 2 or 3 shifts whose largest coefficient
/// degree is exactly max_degree.
inline Recurrence random_recurrence(Rng& rng, int max_degree) {
    Recurrence r;
    r.sequence = "a";
    r.range = {RangeKind::Finite, static_cast<long>(rng() % 3)};
    std::set<long> shifts;
    while (shifts.size() < 2 + rng() % 2)
        shifts.insert(static_cast<long>(rng() % 5) - 2);
    bool reached = false;
    for (auto it = shifts.rbegin(); it != shifts.rend(); ++it) {
        int d = static_cast<int>(rng() % (max_degree + 1));
        if (std::next(it) == shifts.rend() && !reached)
            d = max_degree;
        reached = reached || d == max_degree;
        std::vector<Coeff> cs;
        for (int k = 0; k <= d; ++k)
            cs.push_back(k == d ? Coeff(random_nonzero_rational(rng)) : Coeff(random_rational(rng)));
        r.terms.push_back(RecurrenceTerm{*it, Poly("n", cs), {}});
    }
    return r;
}

} // namespace recsum::testing
