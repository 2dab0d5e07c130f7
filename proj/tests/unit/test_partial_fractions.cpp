#include "recsum/core/partial_fractions.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace recsum;

namespace {

Rational q(long n, long d = 1) { return Rational(mpz_class(n), mpz_class(d)); }

Poly X(std::initializer_list<long> coeffs, const std::string& var = "x") {
    std::vector<Coeff> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Poly(var, std::move(c));
}

} // namespace

TEST_CASE("1/(x^2 - 1) splits into two simple poles") {
    const RationalFunction r(X({1}), X({-1, 0, 1}));
    const PartialFractions pf = partial_fractions(r);
    CHECK(pf.polynomial_part.is_zero());
    CHECK(pf.laurent_part.empty());
    REQUIRE(pf.pole_terms.size() == 2);
    CHECK(pf.pole_terms[0].root == q(-1));
    CHECK(pf.pole_terms[0].coeffs[0] == Coeff(q(-1, 2)));
    CHECK(pf.pole_terms[1].root == q(1));
    CHECK(pf.pole_terms[1].coeffs[0] == Coeff(q(1, 2)));
    // Recombining and comparing by cross-multiplication is the oracle.
    CHECK(pf.recombine() == r);
}

TEST_CASE("symbolic numerator over a single pole is already decomposed") {
    const Coeff q1 = Coeff::atom("q") + Coeff(1);
    const RationalFunction r(Poly::constant(q1), X({-1, 1}));
    const PartialFractions pf = partial_fractions(r);
    REQUIRE(pf.pole_terms.size() == 1);
    CHECK(pf.pole_terms[0].root == q(1));
    CHECK(pf.pole_terms[0].multiplicity == 1);
    CHECK(pf.pole_terms[0].coeffs[0] == q1);
}

TEST_CASE("1/x^2 is a pure Laurent term") {
    const PartialFractions pf = partial_fractions(RationalFunction::laurent_monomial(Coeff(1), -2));
    REQUIRE(pf.laurent_part.size() == 1);
    CHECK(pf.laurent_part[0].first == -2);
    CHECK(pf.laurent_part[0].second == Coeff(1));
    CHECK(pf.pole_terms.empty());
}

TEST_CASE("irrational poles raise UnsupportedDenominator with the remainder") {
    const RationalFunction r(X({1}), X({-2, 0, 1}) * X({-3, 1}));
    try {
        (void)partial_fractions(r);
        FAIL("expected an error");
    } catch (const UnsupportedDenominator& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedDenominator);
        CHECK(e.remainder() == X({-2, 0, 1}));
    }
    const RationalFunction sym(X({1}), Poly("x", {Coeff::atom("c"), Coeff(1)}));
    CHECK_THROWS_AS((void)partial_fractions(sym), UnsupportedDenominator);
}

TEST_CASE("integrate (z/2)(1 + 1/t^2) in t") {
    const Coeff half_z = Coeff::atom("z") / Coeff(2);
    const RationalFunction integrand =
        RationalFunction::constant(half_z, "t") + RationalFunction::laurent_monomial(half_z, -2, "t");
    const RationalIntegral I = integrate_rational(integrand);
    CHECK(I.antiderivative_poly == Poly::monomial(half_z, 1, "t"));
    REQUIRE(I.antiderivative_laurent.size() == 1);
    CHECK(I.antiderivative_laurent[0].root == q(0));
    CHECK(I.antiderivative_laurent[0].exponent == -1);
    CHECK(I.antiderivative_laurent[0].coeff == -half_z);
    CHECK(I.log_terms.empty());
    CHECK(I.derivative() == integrand);
}

TEST_CASE("integrate a/(1 - z) gives a log term at 1") {
    const Coeff a = Coeff::atom("a");
    const RationalFunction integrand(Poly::constant(a, "z"), X({1, -1}, "z"));
    const RationalIntegral I = integrate_rational(integrand);
    CHECK(I.antiderivative_poly.is_zero());
    REQUIRE(I.log_terms.size() == 1);
    CHECK(I.log_terms[0].root == q(1));
    CHECK(I.log_terms[0].coeff == -a);
    CHECK(I.derivative() == integrand);
}

TEST_CASE("integrate x^2") {
    const RationalIntegral I = integrate_rational(RationalFunction(X({0, 0, 1})));
    CHECK(I.antiderivative_poly == Poly::monomial(Coeff(q(1, 3)), 3));
    CHECK(I.log_terms.empty());
    CHECK(I.antiderivative_laurent.empty());
}

TEST_CASE("property: recombination and differentiation on random linear-pole functions") {
    testing::Rng rng(11);
    for (int i = 0; i < 150; ++i) {
        const RationalFunction r = testing::random_linear_pole_function(rng);
        const PartialFractions pf = partial_fractions(r);
        REQUIRE(pf.recombine() == r);
        REQUIRE(integrate_rational(r).derivative() == r);
    }
}

TEST_CASE("rational roots with multiplicity") {
    const Poly p = X({-1, 1}) * X({-1, 1}) * Poly("x", {Coeff(q(2, 3)), Coeff(1)});
    const RationalRoots roots = rational_roots(p);
    REQUIRE(roots.roots.size() == 2);
    CHECK(roots.roots[0] == std::pair<Rational, int>{q(-2, 3), 1});
    CHECK(roots.roots[1] == std::pair<Rational, int>{q(1), 2});
    CHECK(roots.remainder.degree() == 0);
}
