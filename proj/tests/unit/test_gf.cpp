#include "recsum/gf/equation.hpp"

#include "support/brute_force.hpp"
#include "support/corpus_files.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <set>

using namespace recsum;

namespace {

RationalFunction X(long k, const Coeff& c = Coeff(1)) { return RationalFunction::laurent_monomial(c, static_cast<int>(k)); }

Coeff N_plus(long j) { return Coeff::atom("N") + Coeff(j); }

RecurrenceTerm unit_term(long shift, Poly coeff = Poly::constant(Coeff(1), "n")) { return {shift, std::move(coeff), {}}; }

// Boundary terms as one rational function, with atoms for x^N and values.
RationalFunction boundary_total(const FunctionalEquation& eq) {
    RationalFunction total = X(0, Coeff(0));
    for (const auto& b : eq.boundary) {
        const bool tail = b.kind == BoundaryKind::Tail;
        Coeff c = b.coeff;
        if (b.index)
            c *= Coeff::atom(sequence_value_symbol(eq.sequence, *b.index, tail));
        if (tail)
            c *= Coeff::atom("x^N");
        total = total + X(b.power, c);
    }
    return total;
}

} // namespace

TEST_CASE("reindex a forward shift over 0..N") {
    const Reindexed r = reindex_term(unit_term(1), {RangeKind::Finite, 0});
    CHECK(r.contribution.x_power == -1);
    CHECK(r.contribution.coeffs == std::vector<Coeff>{Coeff(1)});
    REQUIRE(r.boundary.size() == 2);
    CHECK(r.boundary[0] == BoundaryTerm{BoundaryKind::Tail, 1, 0, Coeff(1)});
    CHECK(r.boundary[1] == BoundaryTerm{BoundaryKind::Head, 0, -1, Coeff(-1)});
}

TEST_CASE("reindex a backward shift over 0..N") {
    const Reindexed r = reindex_term(unit_term(-1), {RangeKind::Finite, 0});
    CHECK(r.contribution.x_power == 1);
    REQUIRE(r.boundary.size() == 2);
    CHECK(r.boundary[0] == BoundaryTerm{BoundaryKind::Tail, 0, 1, Coeff(-1)});
    CHECK(r.boundary[1] == BoundaryTerm{BoundaryKind::Head, -1, 0, Coeff(1)});
}

TEST_CASE("an unshifted n coefficient is theta with no boundary") {
    const Reindexed r = reindex_term(unit_term(0, Poly::identity("n")), {RangeKind::OneSided, 3});
    CHECK(r.contribution.x_power == 0);
    CHECK(r.contribution.coeffs == std::vector<Coeff>{Coeff(0), Coeff(1)});
    CHECK(r.boundary.empty());
}

TEST_CASE("theta conversion examples") {
    const auto theta = theta_to_derivatives({0, {Coeff(0), Coeff(1)}});
    REQUIRE(theta.size() == 1);
    CHECK(theta[0].first == 1);
    CHECK(theta[0].second == X(1));

    const auto theta2 = theta_to_derivatives({0, {Coeff(0), Coeff(0), Coeff(1)}});
    REQUIRE(theta2.size() == 2);
    CHECK(theta2[0] == std::pair<int, RationalFunction>{1, X(1)});
    CHECK(theta2[1] == std::pair<int, RationalFunction>{2, X(2)});

    // x^-1 (theta + 1) = D + 1/x; checked against direct action on x^n.
    const ThetaPoly t{-1, {Coeff(1), Coeff(1)}};
    const auto ops = theta_to_derivatives(t);
    REQUIRE(ops.size() == 2);
    CHECK(ops[0] == std::pair<int, RationalFunction>{0, X(-1)});
    CHECK(ops[1] == std::pair<int, RationalFunction>{1, X(0)});
    for (long n = 0; n <= 6; ++n)
        CHECK(testing::apply_derivatives(ops, n) == X(n - 1, Coeff(n + 1)));
}

TEST_CASE("Stirling numbers of the second kind") {
    CHECK(stirling2(0, 0) == Rational(1));
    CHECK(stirling2(4, 2) == Rational(7));
    CHECK(stirling2(5, 3) == Rational(25));
    CHECK(stirling2(3, 0) == Rational(0));
}

TEST_CASE("cosine equation in finite mode") {
    const FunctionalEquation eq = derive_equation(parse_recurrence(testing::corpus_text("cosine")), EquationMode::Finite);
    const Coeff c = Coeff::atom("c");
    CHECK(eq.order == 0);
    CHECK(eq.coeffs[0] == X(-1) + X(0, Coeff(-2) * c) + X(1));
    REQUIRE(eq.boundary.size() == 4);
    CHECK(eq.boundary[0] == BoundaryTerm{BoundaryKind::Tail, 1, 0, Coeff(1)});
    CHECK(eq.boundary[1] == BoundaryTerm{BoundaryKind::Head, std::nullopt, -1, Coeff(-1)});
    CHECK(eq.boundary[2] == BoundaryTerm{BoundaryKind::Tail, 0, 1, Coeff(-1)});
    CHECK(eq.boundary[3] == BoundaryTerm{BoundaryKind::Head, std::nullopt, 0, c});
}

TEST_CASE("binomial equation in infinite mode") {
    const FunctionalEquation eq =
        derive_equation(parse_recurrence(testing::corpus_text("binomial")), EquationMode::Infinite);
    CHECK(eq.order == 1);
    CHECK(eq.coeffs[1] == X(0) - X(1));
    CHECK(eq.coeffs[0] == X(0, -Coeff::atom("a")));
    CHECK(eq.boundary.empty());
    CHECK(!eq.assumptions.empty());
}

TEST_CASE("Bessel equation is bilateral") {
    const FunctionalEquation eq = derive_equation(parse_recurrence(testing::corpus_text("bessel")), EquationMode::Finite);
    const Coeff z = Coeff::atom("z");
    CHECK(eq.mode == EquationMode::Bilateral);
    CHECK(eq.order == 1);
    CHECK(eq.coeffs[1] == X(1, Coeff(-2)));
    CHECK(eq.coeffs[0] == X(-1, z) + X(1, z));
    CHECK(eq.boundary.empty());
    // Dividing by the leading coefficient gives S' - (z/2)(1 + 1/x^2) S.
    CHECK(eq.coeffs[0] / eq.coeffs[1] == -(X(0, z / Coeff(2)) + X(-2, z / Coeff(2))));
}

TEST_CASE("11274 equation keeps the tail (N+1) a[N+1] x^N") {
    const FunctionalEquation eq = derive_equation(parse_recurrence(testing::corpus_text("11274")), EquationMode::Finite);
    CHECK(eq.order == 1);
    CHECK(eq.coeffs[1] == X(0) - X(1));
    CHECK(eq.coeffs[0] == X(0, -(Coeff::atom("q") + Coeff(1))));
    REQUIRE(eq.boundary.size() == 1);
    CHECK(eq.boundary[0] == BoundaryTerm{BoundaryKind::Tail, 1, 0, N_plus(1)});
}

TEST_CASE("telescoping recurrence with forcing") {
    const FunctionalEquation eq =
        derive_equation(parse_recurrence(testing::corpus_text("10977")), EquationMode::Infinite);
    CHECK(eq.order == 0);
    CHECK(eq.coeffs[0] == X(0) - X(-1));
    REQUIRE(eq.boundary.size() == 1);
    CHECK(eq.boundary[0] == BoundaryTerm{BoundaryKind::Head, 0, -1, Coeff(1)});
    REQUIRE(eq.forcing.size() == 1);
    CHECK(eq.forcing[0].sequence == "b");
    CHECK(eq.forcing[0].multiplier == X(0, Coeff(-1)));
}

TEST_CASE("bilateral mode is refused for one-sided recurrences") {
    try {
        (void)derive_equation(parse_recurrence(testing::corpus_text("binomial")), EquationMode::Bilateral);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BilateralWithBoundaries);
    }
}

TEST_CASE("unaliased negative heads stay symbolic") {
    const FunctionalEquation eq = derive_equation(
        parse_recurrence("seq a; rec: a[n+1] - a[n-1] = 0; range: 0..N; init: a[0]=1, a[1]=2;"), EquationMode::Finite);
    bool found = false;
    for (const auto& b : eq.boundary)
        found = found || (b.kind == BoundaryKind::Head && b.index == -1);
    CHECK(found);
}

TEST_CASE("property: derived order equals the maximum coefficient degree") {
    testing::Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const int d = static_cast<int>(rng() % 4);
        const Recurrence r = testing::random_recurrence(rng, d);
        const FunctionalEquation eq = derive_equation(r, EquationMode::Finite);
        REQUIRE(eq.order == d);
        CHECK(!eq.coeffs[d].is_zero());
    }
}

TEST_CASE("property: derivation is linear in the recurrence") {
    testing::Rng rng(19);
    for (int i = 0; i < 60; ++i) {
        Recurrence r1 = testing::random_recurrence(rng, static_cast<int>(rng() % 3));
        Recurrence r2 = testing::random_recurrence(rng, static_cast<int>(rng() % 3));
        r2.range = r1.range;
        std::map<long, Poly> sum;
        for (const auto* r : {&r1, &r2})
            for (const auto& t : r->terms) {
                auto [it, fresh] = sum.emplace(t.shift, t.coeff);
                if (!fresh)
                    it->second = it->second + t.coeff;
            }
        Recurrence r12 = r1;
        r12.terms.clear();
        for (auto it = sum.rbegin(); it != sum.rend(); ++it)
            if (!it->second.is_zero())
                r12.terms.push_back(unit_term(it->first, it->second));
        if (r12.terms.empty())
            continue;
        const auto e1 = derive_equation(r1, EquationMode::Finite);
        const auto e2 = derive_equation(r2, EquationMode::Finite);
        const auto e12 = derive_equation(r12, EquationMode::Finite);
        const int order = std::max({e1.order, e2.order, e12.order});
        for (int j = 0; j <= order; ++j) {
            auto at = [j](const FunctionalEquation& e) { return j <= e.order ? e.coeffs[j] : X(0, Coeff(0)); };
            CHECK(at(e12) == at(e1) + at(e2));
        }
        CHECK(boundary_total(e12) == boundary_total(e1) + boundary_total(e2));
    }
}

TEST_CASE("property: theta forms agree on monomials") {
    testing::Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        ThetaPoly t;
        t.x_power = static_cast<long>(rng() % 5) - 2;
        const int degree = static_cast<int>(rng() % 5);
        for (int d = 0; d <= degree; ++d)
            t.coeffs.push_back(Coeff(testing::random_rational(rng)));
        const auto ops = theta_to_derivatives(t);
        for (long n = 0; n <= 10; ++n)
            REQUIRE(testing::apply_derivatives(ops, n) == X(n + t.x_power, t.on_monomial(n)));
    }
}

TEST_CASE("property: truncated oracle series satisfy the finite equation exactly") {
    for (const auto& id : testing::corpus_ids()) {
        std::string text = testing::corpus_text(id);
        // Bilateral entries are checked on their one-sided restriction.
        if (const auto at = text.find("range: bilateral"); at != std::string::npos)
            text.replace(at, 16, "range: n>=0");
        const Recurrence r = parse_recurrence(text);
        const FunctionalEquation eq = derive_equation(r, EquationMode::Finite);
        for (long M = r.range.n0 + r.order(); M <= 30; M += (id == "bessel" ? 7 : 1)) {
            CAPTURE(id);
            CAPTURE(M);
            CHECK(testing::finite_residual(eq, r, M).is_zero());
        }
    }
}
