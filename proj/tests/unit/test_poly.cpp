#include "recsum/core/error.hpp"
#include "recsum/core/poly.hpp"

#include <doctest.h>

using namespace recsum;

namespace {

Poly P(std::initializer_list<long> coeffs, const std::string& var = "n") {
    std::vector<Coeff> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Poly(var, std::move(c));
}

} // namespace

TEST_CASE("shift substitutes n -> n - m") {
    CHECK(poly_arith(P({1, 1}), Poly("n"), PolyOp::Shift, 1) == P({0, 1}));
    CHECK(P({0, 0, 1}).shift(-2) == P({4, 4, 1}));
}

TEST_CASE("mul expands products") {
    CHECK(poly_arith(P({1, 1}), P({-1, 1}), PolyOp::Mul) == P({-1, 0, 1}));
}

TEST_CASE("re-index of q + l + 1 by one step, checked pointwise") {
    const Coeff q = Coeff::atom("q");
    const Poly original("l", {q + Coeff(1), Coeff(1)});
    const Poly shifted = original.shift(1);
    CHECK(shifted == Poly("l", {q, Coeff(1)}));
    // Oracle: evaluate the original at l - 1 for l = 0..5.
    for (long l = 0; l <= 5; ++l)
        CHECK(shifted.evaluate(Coeff(l)) == original.evaluate(Coeff(l - 1)));
}

TEST_CASE("variable mismatch is rejected") {
    try {
        (void)poly_arith(P({1}, "n"), P({1}, "x"), PolyOp::Add);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VariableMismatch);
    }
}

TEST_CASE("compose and divmod") {
    const Poly x = Poly::identity("n");
    const Poly p = P({1, 2, 3});
    CHECK(p.compose(x + P({1})) == p.shift(-1));
    const auto [quot, rem] = P({-1, 0, 0, 1}).divmod(P({-1, 1}));
    CHECK(quot == P({1, 1, 1}));
    CHECK(rem.is_zero());
    const auto [q2, r2] = P({5, 0, 1}).divmod(P({1, 1}));
    CHECK(q2 * P({1, 1}) + r2 == P({5, 0, 1}));
    CHECK(r2.degree() < 1);
}

TEST_CASE("zero polynomial has an empty coefficient list") {
    const Poly z = P({1, 2}) - P({1, 2});
    CHECK(z.is_zero());
    CHECK(z.coeffs().empty());
    CHECK(z.degree() == -1);
}

TEST_CASE("rational functions cancel pure-rational common factors") {
    const RationalFunction r(P({-1, 0, 1}, "x"), P({-1, 1}, "x"));
    CHECK(r.is_polynomial());
    CHECK(r.numerator() == P({1, 1}, "x"));
    const RationalFunction s(P({2}, "x"), P({4, 2}, "x"));
    CHECK(s.denominator() == P({2, 1}, "x"));
    CHECK(s.numerator() == P({1}, "x"));
}

TEST_CASE("atom-bearing rational functions only lose shared powers of x") {
    const Coeff c = Coeff::atom("c");
    const Poly num("x", {Coeff(0), Coeff(1), -Coeff(2) * c, Coeff(1)});
    const Poly den("x", {Coeff(0), Coeff(1)});
    const RationalFunction r(num, den);
    CHECK(r.numerator() == Poly("x", {Coeff(1), -Coeff(2) * c, Coeff(1)}));
    CHECK(r.is_polynomial());
}

TEST_CASE("rational function arithmetic and evaluation") {
    const RationalFunction inv_x = RationalFunction::laurent_monomial(Coeff(1), -1);
    const RationalFunction x = RationalFunction::laurent_monomial(Coeff(1), 1);
    CHECK(inv_x * x == RationalFunction::constant(Coeff(1)));
    CHECK((inv_x + x).evaluate(Coeff(2)) == Coeff(Rational(mpz_class(5), mpz_class(2))));
    CHECK(inv_x.derivative() == -RationalFunction::laurent_monomial(Coeff(1), -2));
    try {
        (void)inv_x.evaluate(Coeff(0));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleAtEvaluationPoint);
    }
}
