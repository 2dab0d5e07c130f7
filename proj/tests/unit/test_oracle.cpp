#include "recsum/oracle/oracle.hpp"
#include "recsum/oracle/special.hpp"
#include "recsum/oracle/verify.hpp"
#include "recsum/solve/solver.hpp"

#include "support/corpus_files.hpp"

#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>

using namespace recsum;

namespace {

Recurrence corpus(const std::string& id) { return parse_recurrence(testing::corpus_text(id)); }

ClosedForm solved_form(const SolveResult& r) { return std::get<ClosedForm>(r); }

double d(const Real& v) { return v.convert_to<double>(); }

// Composite Simpson in double precision, an oracle independent of the
// engine's adaptive quadrature.
template <typename F>
double simpson(F f, double a, double b, int panels = 20000) {
    const double h = (b - a) / panels;
    double total = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        total += (i % 2 ? 4 : 2) * f(a + i * h);
    return total * h / 3;
}

// gamma(s, y) = int_0^sqrt(y) 2 u^(2s-1) e^(-u^2) du
double gamma_by_quadrature(double s, double y) {
    return simpson([s](double u) { return 2 * std::pow(u, 2 * s - 1) * std::exp(-u * u); }, 0, std::sqrt(y));
}

} // namespace

TEST_CASE("unroll examples") {
    SUBCASE("cosine, numeric") {
        const OracleSequence s = unroll_numeric(corpus("cosine"), 2, {{"c", Real(std::cos(1.0))}});
        CHECK(std::abs(d(s.value(2)) - (2 * std::cos(1.0) * std::cos(1.0) - 1)) < 1e-15);
        CHECK(std::abs(d(s.value(2)) + 0.4161468) < 1e-7);
    }
    SUBCASE("binomial, a = 1/2") {
        const OracleSequence s = unroll(corpus("binomial"), 3, {{"a", Coeff(Rational(1, 2))}});
        // (a)(a+1)...(a+n-1)/n!
        Rational term(1);
        for (long n = 0; n <= 3; ++n) {
            CHECK(s.exact_terms.at(n) == Coeff(term));
            term = term * (Rational(1, 2) + Rational(n)) / Rational(n + 1);
        }
        CHECK(s.exact_terms.at(3) == Coeff(Rational(5, 16)));
    }
    SUBCASE("11274, q = 3") {
        const OracleSequence s = unroll(corpus("11274"), 2, {{"q", Coeff(3)}});
        CHECK(s.exact_terms.at(0) == Coeff(1));
        CHECK(s.exact_terms.at(1) == Coeff(4));
        CHECK(s.exact_terms.at(2) == Coeff(10));
    }
    SUBCASE("symbolic start value and forcing") {
        const OracleSequence s = unroll(corpus("10977"), 2);
        CHECK(s.exact_terms.at(2) == Coeff::atom("a[0]") - Coeff::atom("b[0]") - Coeff::atom("b[1]"));
    }
    SUBCASE("numeric forcing provider") {
        const OracleSequence s =
            unroll_numeric(corpus("10977"), 3, {{"a[0]", Real(1)}}, kDefaultPrecisionBits, [](long n) { return Real(n + 1); });
        CHECK(s.value(3) == Real(1 - 1 - 2 - 3));
    }
}

TEST_CASE("unroll reports the first blocked index") {
    const Recurrence r = parse_recurrence("seq a; rec: (n-2)*a[n+1] - a[n] = 0; range: n>=0; init: a[0]=1;");
    try {
        unroll(r, 10);
        FAIL("expected LeadingCoefficientZero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LeadingCoefficientZero);
        CHECK(std::string(e.what()).find("n=2") != std::string::npos);
    }
    CHECK_NOTHROW(unroll(r, 2));
    CHECK_THROWS_AS(unroll(corpus("bessel"), 5), Error);
}

TEST_CASE("unrolled terms satisfy the recurrence exactly") {
    for (const auto& id : testing::corpus_ids()) {
        const Recurrence r = parse_recurrence(testing::corpus_text(id));
        if (r.range.kind == RangeKind::Bilateral)
            continue;
        const OracleSequence s = unroll(r, 30);
        for (long n = r.range.n0; n + r.max_shift() <= 30; ++n)
            CHECK_MESSAGE(recurrence_residual(r, s, n).is_zero(), id << " at n=" << n);
    }
}

TEST_CASE("partial sums") {
    const Recurrence cosine = corpus("cosine");
    const OracleSequence s = unroll_numeric(cosine, 3, {{"c", Real(std::cos(1.0))}});
    CHECK(std::abs(d(partial_sum(s, 0, Real(1), 3)) - (1 + std::cos(1.0) + std::cos(2.0) + std::cos(3.0))) < 1e-14);
    CHECK(partial_sum(cosine, Coeff(Rational(7, 3)), 0) == Coeff(1));
    CHECK(partial_sum(corpus("11274"), Coeff(Rational(1, 2)), 1, {{"q", Coeff(3)}}) == Coeff(3));
    const Recurrence shifted = parse_recurrence("seq a; rec: a[n+1] - 2*a[n] = 0; range: n>=2; init: a[2]=5;");
    CHECK(partial_sum(shifted, Coeff(3), 2) == Coeff(45));
}

TEST_CASE("erf") {
    PrecisionScope scope(kDefaultPrecisionBits);
    CHECK(erf_series(Real(0)) == 0);
    CHECK(std::abs(d(erf_series(Real(1))) - 0.8427007929) < 1e-10);
    const double by_quadrature = 2 / std::sqrt(M_PI) * simpson([](double t) { return std::exp(-t * t); }, 0, 1);
    CHECK(std::abs(d(erf_series(Real(1))) - by_quadrature) < 1e-12);
    CHECK(erf_series(Real("-0.7")) == -erf_series(Real("0.7")));
    Real previous = erf_series(Real(-7));
    for (int i = -60; i <= 60; ++i) {
        const Real x = Real(i) / 10;
        const Real v = erf_series(x);
        CHECK(std::abs(d(v) - std::erf(d(x))) < 1e-14);
        CHECK(v >= previous);
        CHECK(erf_series(-x) == -v);
        previous = v;
    }
    CHECK(erf_series(Real(7)) == 1);
}

TEST_CASE("lower incomplete gamma") {
    PrecisionScope scope(kDefaultPrecisionBits);
    CHECK(std::abs(d(lower_incomplete_gamma(Rational(1, 2), Real(1))) - 1.4936483) < 1e-7);
    CHECK(std::abs(d(lower_incomplete_gamma(Rational(3, 2), Real(1))) - 0.3789447) < 1e-7);
    CHECK(lower_incomplete_gamma(Rational(1, 2), Real(0)) == 0);
    CHECK_THROWS_AS(lower_incomplete_gamma(Rational(1), Real(1)), Error);
    const std::vector<double> ys{0.1, 0.5, 1, 2, 5, 10};
    for (int k = 0; k <= 4; ++k) {
        const Rational s = Rational(k) + Rational(1, 2);
        for (double y : ys) {
            const Real g = lower_incomplete_gamma(s, Real(y));
            const Real next = lower_incomplete_gamma(s + Rational(1), Real(y));
            const Real step = next - to_real(s) * g + pow(Real(y), to_real(s)) * exp(-Real(y));
            CHECK(abs(step) <= Real("1e-10"));
            CHECK(std::abs(d(g) - gamma_by_quadrature(s.to_double(), y)) < 1e-9);
        }
    }
    CHECK(std::abs(d(gamma_half_integer(Rational(5, 2))) - std::tgamma(2.5)) < 1e-14);
}

TEST_CASE("bessel") {
    PrecisionScope scope(kDefaultPrecisionBits);
    CHECK(bessel_j(0, Real(0)) == 1);
    CHECK(bessel_j(4, Real(0)) == 0);
    CHECK(bessel_j(-3, Real("1.5")) == -bessel_j(3, Real("1.5")));
    const double j1 = simpson([](double t) { return std::cos(t - 2 * std::sin(t)); }, 0, M_PI) / M_PI;
    CHECK(std::abs(d(bessel_j(1, Real(2))) - j1) < 1e-12);
    CHECK(std::abs(d(bessel_j(1, Real(2))) - 0.5767248078) < 1e-10);
    for (double z : {0.5, 1.0, 2.0, 5.0}) {
        const Real Z(z);
        for (long n = -20; n <= 20; ++n) {
            const Real jn = bessel_j(n, Z);
            const Real three = Z * bessel_j(n + 1, Z) - 2 * n * jn + Z * bessel_j(n - 1, Z);
            CHECK(abs(three) <= Real("1e-10") * std::max(Real(1), Real(abs(jn))));
            const Real h("1e-5");
            const Real derivative = (bessel_j(n + 1, Z + h) - bessel_j(n + 1, Z - h)) / (2 * h);
            CHECK(abs(jn - bessel_j(n + 2, Z) - 2 * derivative) <= Real("1e-8"));
        }
    }
}

TEST_CASE("tail rule") {
    const Truncation t = choose_truncation([](long n) { return pow(Real(2), -n); }, 0, Real("1e-10"));
    CHECK(t.tail_bound < Real("1e-11"));
    CHECK(pow(Real(2), -(t.K + 1)) < Real("1e-11"));
    CHECK(pow(Real(2), -t.K) >= Real("5e-12"));
    CHECK_THROWS_AS(choose_truncation([](long) { return Real(1); }, 0, Real("1e-10"), 100), Error);
}

TEST_CASE("verify cosine against its oracle") {
    const Recurrence r = corpus("cosine");
    const ClosedForm S = solve_algebraic(derive_equation(r, EquationMode::Finite));
    VerificationPlan plan;
    plan.points = {plan_point("1/2"), plan_point("1"), plan_point("2")};
    plan.upper_limits = {0, 5, 50};

    SUBCASE("rational c gives exact matches") {
        plan.exact_values = {{"c", Coeff(Rational(1, 3))}};
        const VerificationReport report = verify_closed_form(S, r, plan, "cosine");
        CHECK(report.comparisons.size() == 9);
        CHECK(report.verdict == Verdict::ExactMatch);
        for (const auto& c : report.comparisons)
            CHECK(c.exact);
    }
    SUBCASE("c = cos 1 within 1e-12") {
        plan.bindings = {{"c", parse_real_expression("cos(1)")}};
        const VerificationReport report = verify_closed_form(S, r, plan, "cosine");
        CHECK(report.verdict == Verdict::WithinTolerance);
        CHECK(report.max_abs_residual < Real("1e-12"));
        const auto& first = report.comparisons.front();
        CHECK(first.upper_limit == 0);
    }
    SUBCASE("N = 0 at x = 1 reduces to cos 0") {
        plan.bindings = {{"c", parse_real_expression("cos(1)")}};
        plan.points = {plan_point("1")};
        plan.upper_limits = {0};
        const VerificationReport report = verify_closed_form(S, r, plan);
        REQUIRE(report.comparisons.size() == 1);
        CHECK(std::abs(std::stod(report.comparisons[0].oracle) - 1) < 1e-15);
        CHECK(std::abs(std::stod(report.comparisons[0].closed_form) - 1) < 1e-12);
    }
    SUBCASE("a wrong closed form fails and errors do not abort") {
        plan.exact_values = {{"c", Coeff(Rational(1, 3))}};
        const RationalFunction pole = RationalFunction::laurent_monomial(Coeff(1), 0) /
                                      (RationalFunction::laurent_monomial(Coeff(1), 1) - RationalFunction::laurent_monomial(Coeff(2), 0));
        const ClosedForm wrong = ClosedForm::sum({S, ClosedForm::rational(pole)});
        const VerificationReport report = verify_closed_form(wrong, r, plan);
        CHECK(report.verdict == Verdict::Fail);
        for (const auto& c : report.comparisons)
            CHECK(c.error.empty() == (c.point != "2"));
        CHECK(report.comparisons.size() == 9);
    }
}

TEST_CASE("verify infinite and bilateral sums") {
    SUBCASE("binomial at a = 1/2") {
        const Recurrence r = corpus("binomial");
        const ClosedForm S = solved_form(solve(specialize_equation(derive_equation(r, EquationMode::Infinite),
                                                                   {{"a", Coeff(Rational(1, 2))}})));
        VerificationPlan plan;
        plan.mode = EquationMode::Infinite;
        plan.points = {plan_point("1/2"), plan_point("-1/2"), plan_point("0.9")};
        plan.exact_values = {{"a", Coeff(Rational(1, 2))}};
        plan.tolerance = Real("1e-10");
        const VerificationReport report = verify_closed_form(S, r, plan);
        CHECK(report.verdict == Verdict::WithinTolerance);
        for (const auto& c : report.comparisons)
            CHECK(c.truncation.has_value());
    }
    SUBCASE("bessel at z = 1, t = 1") {
        const Recurrence r = corpus("bessel");
        const ClosedForm S = solved_form(
            solve(derive_equation(r, EquationMode::Bilateral), InitialCondition{Coeff(1), ClosedForm::constant(Coeff(1))}));
        VerificationPlan plan;
        plan.mode = EquationMode::Bilateral;
        plan.points = {plan_point("1")};
        plan.bindings = {{"z", Real(1)}};
        plan.tolerance = Real("1e-10");
        plan.term_oracle = [](long n) { return bessel_j(n, Real(1)); };
        const VerificationReport report = verify_closed_form(S, r, plan);
        REQUIRE(report.comparisons.size() == 1);
        CHECK(report.comparisons[0].passed);
        CHECK(report.comparisons[0].truncation == 40);
        CHECK(std::abs(std::stod(report.comparisons[0].closed_form) - 1) < 1e-15);
    }
}
