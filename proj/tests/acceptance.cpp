// One PASS/FAIL line per acceptance criterion. Tolerances are fixed here.

#include "recsum/core/partial_fractions.hpp"
#include "recsum/corpus/corpus.hpp"
#include "recsum/solve/series.hpp"
#include "recsum/solve/solver.hpp"

#include "support/brute_force.hpp"
#include "support/corpus_files.hpp"
#include "support/generators.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <iostream>
#include <sstream>

using namespace recsum;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++cases_;
        if (!ok && failures_++ == 0)
            first_ = what;
    }
    void residual(const Real& r) { worst_ = std::max(worst_, r.convert_to<double>()); }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << cases_ << " cases";
        if (worst_ > 0)
            s << ", max |diff| " << worst_;
        if (failures_)
            s << ", " << failures_ << " failed (first: " << first_ << ")";
        return {failures_ == 0 && cases_ > 0, s.str()};
    }

private:
    long cases_ = 0;
    long failures_ = 0;
    double worst_ = 0;
    std::string first_;
};

RationalFunction X(long k, const Coeff& c = Coeff(1)) { return RationalFunction::laurent_monomial(c, static_cast<int>(k)); }

Coeff A(const std::string& name) { return Coeff::atom(name); }

Recurrence corpus_recurrence(const std::string& id) { return parse_recurrence(testing::corpus_text(id)); }

ClosedForm closed(const SolveResult& r) {
    if (!std::holds_alternative<ClosedForm>(r))
        throw Error(ErrorKind::UnsupportedShape, "not solved: " + std::get<Unsolved>(r).reason);
    return std::get<ClosedForm>(r);
}

Real pi() { return boost::math::constants::pi<Real>(); }

// Regularized P(s, y) = e^-y y^s sum_k y^k / Gamma(s + k + 1) for s = n + 1/2.
Real regularized_gamma(long n, const Real& y) {
    Real gamma = sqrt(pi());
    for (long j = 0; j <= n; ++j)
        gamma *= Real(j) + Real("0.5");
    Real term = pow(y, Real(n) + Real("0.5")) / gamma;
    Real total = term;
    for (long k = 1; k < 100000; ++k) {
        term *= y / (Real(n) + Real("1.5") + Real(k - 1));
        total += term;
        if (term < Real("1e-40") * total)
            break;
    }
    return exp(-y) * total;
}

Real erf_by_gamma(const Real& x) { return x < 0 ? -regularized_gamma(0, x * x) : regularized_gamma(0, x * x); }

Real bessel_series(long n, const Real& z) {
    if (n < 0)
        return (n % 2 ? -1 : 1) * bessel_series(-n, z);
    Real term = 1;
    for (long j = 1; j <= n; ++j)
        term *= z / (2 * j);
    Real total = term;
    for (long k = 1; k < 200; ++k) {
        term *= -(z * z / 4) / (Real(k) * Real(n + k));
        total += term;
    }
    return total;
}

Outcome criterion_cosine() {
    PrecisionScope scope(kDefaultPrecisionBits);
    Tally tally;
    const Recurrence r = corpus_recurrence("cosine");
    const Coeff c = A("c");
    const Coeff xN = A(power_of_n_atom());
    const RationalFunction den = X(2) - X(1, Coeff(2) * c) + X(0);

    const ClosedForm S = closed(solve(derive_equation(r, EquationMode::Finite)));
    const auto rf = to_rational(S);
    tally.check(rf && *rf == (X(0) - X(1, c) + X(2, xN * A("a[N]")) - X(1, xN * A("a[N+1]"))) / den, "finite form");

    const Real c1 = cos(Real(1));
    for (long N : {0L, 1L, 5L, 50L, 1000L}) {
        Real direct = 0;
        for (long n = 0; n <= N; ++n)
            direct += cos(Real(n));
        const Bindings b{{"c", c1}, {"a[N]", cos(Real(N))}, {"a[N+1]", cos(Real(N + 1))}, {"N", Real(N)}};
        const Real d = abs(eval_closed_form(S, Real(1), b) - direct);
        tally.residual(d);
        tally.check(d <= Real("1e-12"), "x=1 N=" + std::to_string(N));
    }

    const ClosedForm inf = closed(solve(derive_equation(r, EquationMode::Infinite)));
    const auto inf_rf = to_rational(inf);
    tally.check(inf_rf && *inf_rf == (X(0) - X(1, c)) / den, "infinite form");
    for (const char* xs : {"0.5", "-0.5", "0.9"}) {
        const Real x(xs);
        // |cos n| <= 1, so the tail after K is at most |x|^(K+1)/(1-|x|).
        long K = 0;
        while (pow(abs(x), K + 1) / (1 - abs(x)) >= Real("1e-12"))
            ++K;
        Real sum = 0;
        for (long n = 0; n <= K; ++n)
            sum += cos(Real(n)) * pow(x, n);
        const Real d = abs(eval_closed_form(inf, x, {{"c", c1}}) - sum);
        tally.residual(d);
        tally.check(d <= Real("1e-10"), std::string("infinite x=") + xs);
    }
    return tally.outcome("rational forms exact, x=1 formula and infinite sums");
}

Outcome criterion_binomial() {
    Tally tally;
    const ClosedForm S = closed(solve(derive_equation(corpus_recurrence("binomial"), EquationMode::Infinite)));
    tally.check(S == ClosedForm::power(ClosedForm::rational(X(0) - X(1)), -A("a")), "(1-x)^(-a)");
    for (const Rational& a : {Rational(1, 2), Rational(-3, 2), Rational(3), Rational(-3)}) {
        const SeriesExpansion s = expand_series(specialize(S, {{"a", Coeff(a)}}), 50);
        tally.check(s.exact && s.exact_coeffs.size() == 51, "exact expansion a=" + a.str());
        Rational rising = 1;
        for (long n = 0; n <= 50 && n < static_cast<long>(s.exact_coeffs.size()); ++n) {
            tally.check(s.exact_coeffs[n] == Coeff(rising), "a=" + a.str() + " n=" + std::to_string(n));
            if (a == Rational(-3))
                tally.check(s.exact_coeffs[n].is_zero() == (n > 3), "terminating n=" + std::to_string(n));
            rising = rising * (a + Rational(n)) / Rational(n + 1);
        }
    }
    return tally.outcome("rising-factorial coefficients to n=50");
}

Outcome criterion_bessel() {
    PrecisionScope scope(kDefaultPrecisionBits);
    Tally tally;
    const FunctionalEquation eq = derive_equation(corpus_recurrence("bessel"), EquationMode::Bilateral);
    const ClosedForm S = closed(solve(eq, InitialCondition{Coeff(1), ClosedForm::constant(Coeff(1))}));
    const Coeff h = A("z") / Coeff(2);
    tally.check(S == ClosedForm::exp(ClosedForm::rational(X(1, h) - X(-1, h))), "exp form");
    for (const char* zs : {"0.5", "1", "2"})
        for (const char* ts : {"0.5", "1", "-1", "2"}) {
            const Real z(zs);
            const Real t(ts);
            Real sum = 0;
            for (long n = -40; n <= 40; ++n)
                sum += bessel_series(n, z) * pow(t, n);
            const Real engine = eval_closed_form(S, t, {{"z", z}});
            const Real direct = exp(z / 2 * (t - 1 / t));
            const Real d = abs(sum - engine);
            tally.residual(d);
            tally.check(d <= Real("1e-10") && abs(engine - direct) <= Real("1e-30"),
                        std::string("z=") + zs + " t=" + ts);
        }
    return tally.outcome("12-point grid, |n| <= 40");
}

Outcome criterion_11274() {
    Tally tally;
    CorpusEntry entry;
    entry.id = "11274";
    entry.file = "11274.rec";
    entry.mode = EquationMode::Finite;
    entry.route = SolverRoute::FirstOrder;
    entry.checks = Json::parse(R"({"closed_form_max_m": 12, "problem_max": 25, "final_points": ["0", "1/2", "2", "-1"]})");
    const EntryReport report = run_entry(entry, default_corpus_directory());
    tally.check(report.error.empty(), report.error);
    const std::map<std::string, long> expected_cases = {{"closed form of S(m-n, m+n; x)", 91},
                                                        {"problem identity, brute force", 676},
                                                        {"problem identity, engine S(p, q; 1/2)", 676},
                                                        {"central binomial sums", 26},
                                                        {"polynomial identity at rational x", 364}};
    long identity_cases = 0;
    for (const auto& [name, count] : expected_cases) {
        bool found = false;
        for (const auto& c : report.checks)
            if (c.name == name) {
                found = true;
                tally.check(c.passed && c.failures == 0, name);
                tally.check(c.cases == count, name + " case count " + std::to_string(c.cases));
                if (name.rfind("problem identity", 0) == 0)
                    identity_cases += c.cases;
            }
        tally.check(found, name + " missing");
    }
    tally.check(identity_cases == 1352, "problem identity total " + std::to_string(identity_cases));
    return tally.outcome("closed form m<=12, problem identity 1352 cases, sums m<=25, polynomial identity at 4 points");
}

Outcome criterion_10977() {
    PrecisionScope scope(kDefaultPrecisionBits);
    Tally tally;
    const ClosedForm T = closed(solve(derive_equation(corpus_recurrence("10977"), EquationMode::Infinite)));
    const auto rf = to_rational(T);
    tally.check(rf && *rf == (X(0, A("a[0]")) - X(1, A("B(x)"))) / (X(0) - X(1)), "T structure");
    for (const char* bs : {"0.25", "0.5", "1", "2"})
        for (const char* ts : {"0.25", "1", "4"}) {
            const Real beta(bs);
            const Real t(ts);
            const Real s = 1 + beta * beta;
            const Real x = beta * beta / s;
            const Real y = s * t;
            const Real rhs = s * erf_by_gamma(sqrt(y)) - exp(-t) * beta * sqrt(s) * erf_by_gamma(beta * sqrt(t));
            // 0 <= a_n <= 1, so the tail after K is at most x^(K+1)/(1-x).
            Real lhs = 0;
            for (long n = 0;; ++n) {
                lhs += regularized_gamma(n, y) * pow(x, n);
                if (pow(x, n + 1) / (1 - x) < Real("1e-10"))
                    break;
            }
            const Real B = exp(-y) * exp(x * y) * erf_by_gamma(sqrt(x * y)) / sqrt(x);
            const Real engine = eval_closed_form(T, x, {{"a[0]", erf_by_gamma(sqrt(y))}, {"B(x)", B}});
            const Real d = std::max(Real(abs(lhs - rhs)), Real(abs(engine - rhs)));
            tally.residual(d);
            tally.check(d <= Real("1e-8"), std::string("beta=") + bs + " t=" + ts);
        }
    return tally.outcome("12-point (beta, t) grid");
}

Outcome criterion_compiler() {
    Tally tally;
    testing::Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        const int d = static_cast<int>(i % 4);
        const FunctionalEquation eq = derive_equation(testing::random_recurrence(rng, d), EquationMode::Finite);
        tally.check(eq.order == d && !eq.coeffs[d].is_zero(), "order law #" + std::to_string(i));
    }
    for (const auto& id : testing::corpus_ids()) {
        std::string text = testing::corpus_text(id);
        if (const auto at = text.find("range: bilateral"); at != std::string::npos)
            text.replace(at, 16, "range: n>=0");
        const Recurrence r = parse_recurrence(text);
        const FunctionalEquation eq = derive_equation(r, EquationMode::Finite);
        for (long M = r.range.n0 + r.order(); M <= 30; ++M)
            tally.check(testing::finite_residual(eq, r, M).is_zero(), id + " M=" + std::to_string(M));
    }
    for (int i = 0; i < 100; ++i) {
        ThetaPoly t;
        t.x_power = static_cast<long>(rng() % 5) - 2;
        for (int k = 0, degree = static_cast<int>(rng() % 5); k <= degree; ++k)
            t.coeffs.push_back(Coeff(testing::random_rational(rng)));
        const auto ops = theta_to_derivatives(t);
        for (long n = 0; n <= 10; ++n)
            tally.check(testing::apply_derivatives(ops, n) == X(n + t.x_power, t.on_monomial(n)),
                        "theta #" + std::to_string(i) + " n=" + std::to_string(n));
    }
    return tally.outcome("order law x200, corpus residuals M<=30, theta agreement");
}

Outcome criterion_exact_core() {
    Tally tally;
    testing::Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const RationalFunction f = testing::random_linear_pole_function(rng);
        const PartialFractions pf = partial_fractions(f);
        tally.check(pf.recombine() == f, "round trip #" + std::to_string(i));

        // Pointwise: the decomposition summed by hand at a non-pole point.
        const Coeff x(testing::random_rational(rng, 7, 5) + Rational(1, 97));
        Coeff sum = pf.polynomial_part.evaluate(x);
        for (const auto& [k, c] : pf.laurent_part)
            sum += c * x.pow(k);
        for (const auto& p : pf.pole_terms)
            for (int l = 1; l <= p.multiplicity; ++l)
                sum += p.coeffs[l - 1] / (x - Coeff(p.root)).pow(l);
        tally.check(sum == f.evaluate(x), "pointwise #" + std::to_string(i));

        const RationalIntegral I = integrate_rational(f);
        RationalFunction d = I.rational_part().derivative();
        for (const auto& lt : I.log_terms)
            d = d + RationalFunction(Poly::constant(lt.coeff), Poly("x", {Coeff(-lt.root), Coeff(1)}));
        tally.check(d == f, "integrate-differentiate #" + std::to_string(i));
    }
    return tally.outcome("1000 random rational functions");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 cosine", criterion_cosine},         {"2 binomial", criterion_binomial},
        {"3 bessel", criterion_bessel},         {"4 problem 11274", criterion_11274},
        {"5 problem 10977", criterion_10977},   {"6 compiler properties", criterion_compiler},
        {"7 exact-core properties", criterion_exact_core}};
    bool all = true;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << name << ": " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
