#include "recsum/corpus/corpus.hpp"

#include "recsum/core/error.hpp"
#include "recsum/oracle/oracle.hpp"
#include "recsum/oracle/special.hpp"
#include "recsum/solve/series.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <fstream>
#include <sstream>

namespace recsum {

namespace {

constexpr std::size_t kMaxDetails = 8;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Rational exact(const std::string& text) {
    auto r = Rational::parse(text);
    if (!r)
        throw Error(ErrorKind::SyntaxError, "'" + text + "' is not an exact rational");
    return *r;
}

Real numeric(const std::string& text) { return parse_real_expression(text); }

RationalFunction X(long k, const Coeff& c = Coeff(1)) {
    return RationalFunction::laurent_monomial(c, static_cast<int>(k));
}

void record(CheckResult& check, bool ok, const std::string& label) {
    ++check.cases;
    if (ok)
        return;
    ++check.failures;
    check.passed = false;
    if (check.details.size() < kMaxDetails)
        check.details.push_back(label);
}

void note_residual(CheckResult& check, const Real& residual) {
    if (!check.max_residual || *check.max_residual < residual)
        check.max_residual = residual;
}

// Runs body, turning an engine error into a failed case.
template <typename F>
CheckResult run_check(const std::string& name, F body) {
    CheckResult check;
    check.name = name;
    try {
        body(check);
    } catch (const Error& e) {
        record(check, false, e.what());
    }
    if (check.cases == 0)
        record(check, false, "no cases ran");
    return check;
}

struct EntryContext {
    const CorpusEntry& entry;
    const Recurrence& r;
    const FunctionalEquation& eq;
    const ClosedForm& cf;
    EntryReport& report;

    const Json& param(const char* key) const { return entry.checks.at(key); }
    std::vector<std::string> strings(const char* key) const { return param(key).get<std::vector<std::string>>(); }
    std::string text(const char* key) const { return param(key).get<std::string>(); }
};

std::string beta_t_label(const std::string& a, const std::string& av, const std::string& b, const std::string& bv) {
    return a + "=" + av + ", " + b + "=" + bv;
}

void cosine_checks(EntryContext& ctx) {
    const Coeff c = Coeff::atom(ctx.r.atoms.front().name);
    const Coeff aN = Coeff::atom(sequence_value_symbol(ctx.r.sequence, 0, true));
    const Coeff aN1 = Coeff::atom(sequence_value_symbol(ctx.r.sequence, 1, true));
    const Coeff xN = Coeff::atom(power_of_n_atom());
    const RationalFunction den = X(2) - X(1, Coeff(2) * c) + X(0);

    ctx.report.checks.push_back(run_check("finite rational form", [&](CheckResult& check) {
        const RationalFunction expected = (X(0) - X(1, c) + X(2, xN * aN) - X(1, xN * aN1)) / den;
        const auto got = to_rational(ctx.cf);
        record(check, got && *got == expected, got ? "got " + got->str() : "not rational");
    }));

    ctx.report.checks.push_back(run_check("x = 1 formula", [&](CheckResult& check) {
        const ClosedForm at_one = at_point(ctx.cf, kGfVariable, Coeff(1));
        const Coeff expected = (Coeff(1) - c + aN - aN1) / (Coeff(2) - Coeff(2) * c);
        const auto value = at_one.constant_value();
        record(check, value && *value == expected, "symbolic value " + at_one.str());

        PrecisionScope scope(ctx.entry.precision_bits);
        const Real tol = numeric(ctx.text("x1_tolerance"));
        for (long N : ctx.param("x1_upper_limits").get<std::vector<long>>()) {
            Real direct = 0;
            for (long n = 0; n <= N; ++n)
                direct += cos(Real(n));
            const Bindings b{{c.str(), cos(Real(1))},
                             {aN.str(), cos(Real(N))},
                             {aN1.str(), cos(Real(N + 1))},
                             {kUpperLimit, Real(N)}};
            const Real residual = abs(eval_closed_form(at_one, Real(0), b, ctx.entry.precision_bits) - direct);
            note_residual(check, residual);
            record(check, residual <= tol, "N=" + std::to_string(N) + " residual " + format_real(residual, 3));
        }
    }));

    ctx.report.checks.push_back(run_check("infinite form", [&](CheckResult& check) {
        const FunctionalEquation inf = derive_equation(ctx.r, EquationMode::Infinite);
        const ClosedForm S = solve_algebraic(inf);
        const auto got = to_rational(S);
        record(check, got && *got == (X(0) - X(1, c)) / den, got ? "got " + got->str() : "not rational");

        PlanSpec spec;
        spec.label = "infinite";
        spec.points = ctx.strings("infinite_points");
        spec.tolerance = ctx.text("infinite_tolerance");
        const VerificationPlan plan = build_plan(spec, ctx.r, EquationMode::Infinite, ctx.entry.precision_bits);
        VerificationReport report = verify_closed_form(S, ctx.r, plan, ctx.entry.id + ": infinite");
        for (const auto& cmp : report.comparisons) {
            note_residual(check, cmp.abs_residual);
            record(check, cmp.passed, "x=" + cmp.point + " " + cmp.error);
        }
        ctx.report.verification.push_back(std::move(report));
    }));
}

void telescoping_checks(EntryContext& ctx) {
    const std::string a0 = sequence_value_symbol(ctx.r.sequence, 0, false);
    const std::string B = gf_symbol(ctx.r.external_sequences.front());

    ctx.report.checks.push_back(run_check("telescoped T structure", [&](CheckResult& check) {
        const auto got = to_rational(ctx.cf);
        const RationalFunction expected = (X(0, Coeff::atom(a0)) - X(1, Coeff::atom(B))) / (X(0) - X(1));
        record(check, got && *got == expected, got ? "got " + got->str() : "not rational");
    }));

    PrecisionScope scope(ctx.entry.precision_bits);
    const Real tol = numeric(ctx.text("tolerance"));
    CheckResult series;
    series.name = "final identity by series";
    CheckResult engine;
    engine.name = "final identity by engine T";
    for (const auto& beta_text : ctx.strings("beta"))
        for (const auto& t_text : ctx.strings("t")) {
            const std::string label = beta_t_label("beta", beta_text, "t", t_text);
            try {
                const Real beta = numeric(beta_text);
                const Real t = numeric(t_text);
                const Real s = 1 + beta * beta;
                const Real x = beta * beta / s;
                const Real y = s * t;
                const Real rhs = s * erf_series(sqrt(y)) - exp(-t) * beta * sqrt(s) * erf_series(beta * sqrt(t));

                std::vector<Real> terms;
                auto term = [&](long n) {
                    while (static_cast<long>(terms.size()) <= n) {
                        const Rational order = Rational(static_cast<long>(terms.size())) + Rational(1, 2);
                        terms.push_back(lower_incomplete_gamma(order, y) / gamma_half_integer(order) *
                                        pow(x, static_cast<long>(terms.size())));
                    }
                    return terms[n];
                };
                const Truncation trunc = choose_truncation(term, 0, tol);
                Real lhs = 0;
                for (long n = 0; n <= trunc.K; ++n)
                    lhs += term(n);
                const Real r1 = abs(lhs - rhs);
                note_residual(series, r1);
                record(series, r1 <= tol, label + " residual " + format_real(r1, 3));

                const Real Bx = exp(-y) * exp(x * y) * erf_series(sqrt(x * y)) / sqrt(x);
                const Bindings b{{a0, erf_series(sqrt(y))}, {B, Bx}};
                const Real r2 = abs(eval_closed_form(ctx.cf, x, b, ctx.entry.precision_bits) - rhs);
                note_residual(engine, r2);
                record(engine, r2 <= tol, label + " residual " + format_real(r2, 3));

                VerificationPlan plan;
                plan.mode = EquationMode::Infinite;
                plan.points.push_back(PlanPoint{"beta^2/(1+beta^2)", std::nullopt, x});
                plan.bindings = b;
                plan.tolerance = tol;
                plan.precision_bits = ctx.entry.precision_bits;
                plan.forcing = [y](long n) {
                    const Rational order = Rational(n) + Rational(3, 2);
                    return pow(y, to_real(order) - 1) * exp(-y) / gamma_half_integer(order);
                };
                ctx.report.verification.push_back(verify_closed_form(ctx.cf, ctx.r, plan, ctx.entry.id + ": " + label));
            } catch (const Error& e) {
                record(series, false, label + ": " + e.what());
                record(engine, false, label + ": " + e.what());
            }
        }
    ctx.report.checks.push_back(std::move(series));
    ctx.report.checks.push_back(std::move(engine));
}

void binomial_checks(EntryContext& ctx) {
    const std::string a = ctx.r.atoms.front().name;
    const ClosedForm one_minus_x = ClosedForm::rational(X(0) - X(1));

    ctx.report.checks.push_back(run_check("solved (1 - x)^(-a)", [&](CheckResult& check) {
        record(check, ctx.cf == ClosedForm::power(one_minus_x, -Coeff::atom(a)), "got " + ctx.cf.str());
    }));

    const long terms = ctx.param("terms").get<long>();
    ctx.report.checks.push_back(run_check("exact series vs rising factorial", [&](CheckResult& check) {
        for (const auto& text : ctx.strings("a")) {
            const Rational value = exact(text);
            const SeriesExpansion s = expand_series(specialize(ctx.cf, {{a, Coeff(value)}}), static_cast<int>(terms));
            record(check, s.exact && s.start == 0, "a=" + text + " expansion not exact");
            if (!s.exact)
                continue;
            Rational rising = 1;
            for (long n = 0; n <= terms; ++n) {
                const bool ok = static_cast<long>(s.exact_coeffs.size()) > n && s.exact_coeffs[n] == Coeff(rising);
                record(check, ok, "a=" + text + " n=" + std::to_string(n));
                rising = rising * (value + Rational(n)) / Rational(n + 1);
            }
        }
    }));

    ctx.report.checks.push_back(run_check("terminating case", [&](CheckResult& check) {
        const Json& spec = ctx.param("terminating");
        const std::string text = spec.at("a").get<std::string>();
        const long last = spec.at("last_nonzero").get<long>();
        const SeriesExpansion s =
            expand_series(specialize(ctx.cf, {{a, Coeff(exact(text))}}), static_cast<int>(terms));
        record(check, s.exact, "a=" + text + " expansion not exact");
        for (long n = 0; n < static_cast<long>(s.exact_coeffs.size()); ++n)
            record(check, s.exact_coeffs[n].is_zero() == (n > last), "n=" + std::to_string(n));
    }));
}

void bessel_checks(EntryContext& ctx) {
    const std::string z = ctx.r.atoms.front().name;
    const Coeff h = Coeff::atom(z) / Coeff(2);

    ctx.report.checks.push_back(run_check("solved exp((z/2)(x - 1/x))", [&](CheckResult& check) {
        record(check, ctx.cf == ClosedForm::exp(ClosedForm::rational(X(1, h) - X(-1, h))), "got " + ctx.cf.str());
    }));

    ctx.report.checks.push_back(run_check("generating function grid", [&](CheckResult& check) {
        PrecisionScope scope(ctx.entry.precision_bits);
        const Real tol = numeric(ctx.text("tolerance"));
        const long K = ctx.param("truncation").get<long>();
        for (const auto& z_text : ctx.strings("z")) {
            const Real zv = numeric(z_text);
            VerificationPlan plan;
            plan.mode = EquationMode::Bilateral;
            for (const auto& t : ctx.strings("t"))
                plan.points.push_back(plan_point(t));
            plan.bindings = {{z, zv}};
            plan.tolerance = tol;
            plan.precision_bits = ctx.entry.precision_bits;
            plan.bilateral_truncation = K;
            plan.term_oracle = [zv](long n) { return bessel_j(n, zv); };
            VerificationReport report = verify_closed_form(ctx.cf, ctx.r, plan, ctx.entry.id + ": z=" + z_text);
            for (const auto& cmp : report.comparisons) {
                note_residual(check, cmp.abs_residual);
                record(check, cmp.error.empty() && cmp.abs_residual <= tol,
                       beta_t_label("z", z_text, "t", cmp.point) + " residual " + format_real(cmp.abs_residual, 3) +
                           cmp.error);
            }
            ctx.report.verification.push_back(std::move(report));
        }
    }));
}

Rational binom(long n, long k) { return Rational(binomial(n, k)); }

Rational power_of(const Rational& base, long k) { return base.pow(k); }

void problem_checks(EntryContext& ctx) {
    const std::string q = ctx.r.atoms.front().name;
    std::map<std::pair<long, long>, RationalFunction> cache;
    // S(p, q; x) from the specialized equation with A[p+1] = C(p+q+1, q).
    auto S = [&](long p, long qv) -> const RationalFunction& {
        auto it = cache.find({p, qv});
        if (it != cache.end())
            return it->second;
        const FunctionalEquation sp = specialize_equation(ctx.eq, {{q, Coeff(qv)}}, p, {{p + 1, Coeff(binom(p + qv + 1, qv))}});
        const SolveResult solved = solve(sp);
        if (!std::holds_alternative<ClosedForm>(solved))
            throw Error(ErrorKind::UnsupportedShape, std::get<Unsolved>(solved).reason);
        const auto rf = to_rational(std::get<ClosedForm>(solved));
        if (!rf)
            throw Error(ErrorKind::UnsupportedShape, "specialized solution is not rational");
        return cache.emplace(std::make_pair(p, qv), *rf).first->second;
    };

    const long max_m = ctx.param("closed_form_max_m").get<long>();
    const long max_problem = ctx.param("problem_max").get<long>();

    ctx.report.checks.push_back(run_check("closed form of S(m-n, m+n; x)", [&](CheckResult& check) {
        for (long m = 0; m <= max_m; ++m)
            for (long n = 0; n <= m; ++n) {
                const long p = m - n;
                RationalFunction expected = X(0, Coeff(0));
                RationalFunction one_minus_x_k = X(0);
                for (long k = 0; k <= p; ++k) {
                    expected = expected + one_minus_x_k * X(p - k, Coeff(binom(2 * m + 1, m + n + k + 1)));
                    one_minus_x_k = one_minus_x_k * (X(0) - X(1));
                }
                record(check, S(p, m + n) == expected, "m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
    }));

    auto rhs = [](long m, long n) {
        Rational out = Rational(4).pow(m);
        for (long j = 1; j <= n; ++j)
            out -= binom(2 * m + 1, m + j);
        return out;
    };

    ctx.report.checks.push_back(run_check("problem identity, brute force", [&](CheckResult& check) {
        for (long m = 0; m <= max_problem; ++m)
            for (long n = 0; n <= max_problem; ++n) {
                Rational lhs = 0;
                for (long k = 0; k <= m; ++k)
                    lhs += power_of(Rational(2), k) * binom(2 * m - k, m + n);
                record(check, lhs == rhs(m, n), "m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
    }));

    ctx.report.checks.push_back(run_check("problem identity, engine S(p, q; 1/2)", [&](CheckResult& check) {
        for (long m = 0; m <= max_problem; ++m)
            for (long n = 0; n <= max_problem; ++n) {
                Rational lhs = 0;
                if (m >= n) {
                    const long p = m - n;
                    lhs = power_of(Rational(2), p) * S(p, m + n).evaluate(Coeff(Rational(1, 2))).rational();
                }
                record(check, lhs == rhs(m, n), "m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
    }));

    ctx.report.checks.push_back(run_check("central binomial sums", [&](CheckResult& check) {
        for (long m = 0; m <= max_problem; ++m) {
            Rational upper = 0;
            Rational lower = 0;
            for (long j = 1; j <= m + 1; ++j)
                upper += binom(2 * m + 1, m + j);
            for (long j = 0; j <= m; ++j)
                lower += binom(2 * m + 1, j);
            const Rational four_m = Rational(4).pow(m);
            record(check, upper == four_m && lower == four_m, "m=" + std::to_string(m));
        }
    }));

    ctx.report.checks.push_back(run_check("polynomial identity at rational x", [&](CheckResult& check) {
        const auto points = ctx.strings("final_points");
        for (long m = 0; m <= max_m; ++m)
            for (long n = 0; n <= m; ++n) {
                const long p = m - n;
                const RationalFunction& s = S(p, m + n);
                for (const auto& text : points) {
                    const Rational x = exact(text);
                    // x^p S(p, q; 1/x) is S with its coefficients reversed.
                    Rational reversed = 0;
                    for (long l = 0; l <= p; ++l)
                        reversed += s.numerator()[l].rational() * x.pow(p - l);
                    reversed /= s.denominator()[0].rational();
                    const Rational lhs = (x - Rational(1)).pow(n + 1) * reversed;
                    Rational right = 0;
                    for (long j = 1; j <= m + 1; ++j)
                        right += binom(2 * m + 1, m + j) * (x - Rational(1)).pow(j);
                    for (long j = 1; j <= n; ++j)
                        right -= binom(2 * m + 1, m + j) * (x - Rational(1)).pow(j);
                    record(check, lhs == right, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " x=" + text);
                }
            }
    }));
}

void run_identity_checks(EntryContext& ctx) {
    const std::string& id = ctx.entry.id;
    if (id == "cosine")
        cosine_checks(ctx);
    else if (id == "10977")
        telescoping_checks(ctx);
    else if (id == "binomial")
        binomial_checks(ctx);
    else if (id == "bessel")
        bessel_checks(ctx);
    else if (id == "11274")
        problem_checks(ctx);
}

PlanSpec plan_spec_from_json(const Json& j) {
    PlanSpec spec;
    spec.label = j.value("label", "");
    if (j.contains("mode")) {
        auto mode = parse_mode(j.at("mode").get<std::string>());
        if (!mode)
            throw Error(ErrorKind::SyntaxError, "unknown mode in plan " + spec.label);
        spec.mode = *mode;
    }
    spec.points = j.value("points", std::vector<std::string>{});
    spec.upper_limits = j.value("upper_limits", std::vector<long>{});
    if (j.contains("exact_values"))
        for (const auto& [name, value] : j.at("exact_values").items())
            spec.exact_values.emplace(name, Coeff(exact(value.get<std::string>())));
    if (j.contains("bindings"))
        for (const auto& [name, value] : j.at("bindings").items())
            spec.bindings.emplace(name, value.get<std::string>());
    spec.tolerance = j.value("tolerance", spec.tolerance);
    if (j.contains("quadrature_tolerance"))
        spec.quadrature_tolerance = j.at("quadrature_tolerance").get<std::string>();
    spec.truncation = j.value("truncation", spec.truncation);
    return spec;
}

} // namespace

std::string_view to_string(SolverRoute route) {
    switch (route) {
    case SolverRoute::Algebraic: return "algebraic";
    case SolverRoute::FirstOrder: return "first-order";
    case SolverRoute::ReportOnly: return "report-only";
    }
    return "report-only";
}

std::optional<SolverRoute> parse_route(std::string_view text) {
    if (text == "algebraic")
        return SolverRoute::Algebraic;
    if (text == "first-order")
        return SolverRoute::FirstOrder;
    if (text == "report-only")
        return SolverRoute::ReportOnly;
    return std::nullopt;
}

std::string default_corpus_directory() { return RECSUM_DEFAULT_CORPUS_DIR; }

CorpusConfig corpus_from_json(const Json& j, const std::string& directory) {
    CorpusConfig config;
    config.directory = directory;
    try {
        for (const auto& e : j.at("entries")) {
            CorpusEntry entry;
            entry.id = e.at("id").get<std::string>();
            entry.file = e.at("file").get<std::string>();
            auto mode = parse_mode(e.at("mode").get<std::string>());
            auto route = parse_route(e.at("route").get<std::string>());
            if (!mode || !route)
                throw Error(ErrorKind::SyntaxError, "entry " + entry.id + " has an unknown mode or route");
            entry.mode = *mode;
            entry.route = *route;
            if (e.contains("initial_condition"))
                entry.initial_condition = {e.at("initial_condition").at("point").get<std::string>(),
                                           e.at("initial_condition").at("value").get<std::string>()};
            entry.precision_bits = e.value("precision_bits", entry.precision_bits);
            for (const auto& p : e.value("verification", Json::array()))
                entry.verification.push_back(plan_spec_from_json(p));
            entry.checks = e.value("checks", Json::object());
            config.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SyntaxError, std::string("malformed corpus configuration: ") + e.what());
    }
    return config;
}

CorpusConfig load_corpus(const std::string& directory) {
    const std::string path = directory + "/corpus.json";
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SyntaxError, path + ": " + e.what());
    }
    return corpus_from_json(j, directory);
}

Recurrence load_recurrence(const std::string& path) {
    const ParseResult parsed = parse_with_diagnostics(read_file(path));
    for (const auto& d : parsed.diagnostics)
        if (d.severity == Severity::Error)
            throw Error(ErrorKind::SyntaxError, path + ":" + std::to_string(d.span.line) + ":" +
                                                    std::to_string(d.span.column) + ": " + d.message);
    if (!parsed.recurrence)
        throw Error(ErrorKind::SyntaxError, path + ": no recurrence");
    return *parsed.recurrence;
}

VerificationPlan build_plan(const PlanSpec& spec, const Recurrence& r, EquationMode mode, unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    VerificationPlan plan;
    plan.mode = spec.mode.value_or(mode);
    for (const auto& p : spec.points)
        plan.points.push_back(plan_point(p));
    plan.upper_limits = spec.upper_limits;
    plan.exact_values = spec.exact_values;
    for (const auto& a : r.atoms)
        if (a.numeric_hint && !spec.exact_values.count(a.name))
            plan.bindings.emplace(a.name, numeric(*a.numeric_hint));
    for (const auto& [name, value] : spec.bindings)
        plan.bindings.insert_or_assign(name, numeric(value));
    plan.tolerance = numeric(spec.tolerance);
    plan.precision_bits = precision_bits;
    plan.bilateral_truncation = spec.truncation;
    if (spec.quadrature_tolerance)
        plan.quadrature.tolerance = numeric(*spec.quadrature_tolerance);
    return plan;
}

SolveResult solve_by_route(const FunctionalEquation& eq, SolverRoute route, const std::optional<InitialCondition>& init) {
    switch (route) {
    case SolverRoute::Algebraic:
        if (eq.order != 0)
            throw Error(ErrorKind::UnsupportedShape, "algebraic route needs an order-0 equation, got order " +
                                                         std::to_string(eq.order));
        return solve_algebraic(eq);
    case SolverRoute::FirstOrder:
        if (eq.order != 1)
            throw Error(ErrorKind::UnsupportedShape, "first-order route needs an order-1 equation, got order " +
                                                         std::to_string(eq.order));
        return solve_first_order(eq, init);
    case SolverRoute::ReportOnly: break;
    }
    return Unsolved{eq, "report-only route"};
}

EntryReport run_entry(const CorpusEntry& entry, const std::string& directory) {
    EntryReport report;
    report.id = entry.id;
    report.route = entry.route;
    report.mode = entry.mode;
    try {
        const Recurrence r = load_recurrence(directory + "/" + entry.file);
        const FunctionalEquation eq = derive_equation(r, entry.mode);
        report.equation = eq;
        std::optional<InitialCondition> init;
        if (entry.initial_condition)
            init = InitialCondition{Coeff(exact(entry.initial_condition->first)),
                                    ClosedForm::constant(Coeff(exact(entry.initial_condition->second)))};
        const SolveResult solved = solve_by_route(eq, entry.route, init);
        if (std::holds_alternative<ClosedForm>(solved)) {
            const ClosedForm& cf = std::get<ClosedForm>(solved);
            report.closed_form = cf;
            for (const auto& spec : entry.verification)
                report.verification.push_back(verify_closed_form(cf, r, build_plan(spec, r, entry.mode, entry.precision_bits),
                                                                  entry.id + ": " + spec.label));
            EntryContext ctx{entry, r, eq, cf, report};
            run_identity_checks(ctx);
        }
    } catch (const Error& e) {
        report.error = e.what();
    } catch (const nlohmann::json::exception& e) {
        report.error = std::string("malformed check parameters: ") + e.what();
    }
    report.passed = report.error.empty() && (report.closed_form || entry.route == SolverRoute::ReportOnly);
    for (const auto& v : report.verification)
        report.passed = report.passed && v.verdict != Verdict::Fail;
    for (const auto& c : report.checks)
        report.passed = report.passed && c.passed;
    return report;
}

RunReport run_corpus(const std::string& id, const CorpusConfig& config) {
    RunReport run;
    bool found = false;
    for (const auto& entry : config.entries) {
        if (id != "all" && entry.id != id)
            continue;
        found = true;
        run.entries.push_back(run_entry(entry, config.directory));
    }
    if (!found)
        throw Error(ErrorKind::SyntaxError, "unknown corpus entry '" + id + "'");
    run.passed = true;
    for (const auto& e : run.entries)
        run.passed = run.passed && e.passed;
    return run;
}

Json to_json(const CheckResult& c) {
    Json out;
    out["name"] = c.name;
    out["passed"] = c.passed;
    out["cases"] = c.cases;
    out["failures"] = c.failures;
    out["max_residual"] = c.max_residual ? Json(format_real(*c.max_residual, 6)) : Json(nullptr);
    out["details"] = c.details;
    return out;
}

Json to_json(const EntryReport& e) {
    Json out;
    out["id"] = e.id;
    out["route"] = std::string(to_string(e.route));
    out["mode"] = std::string(to_string(e.mode));
    out["passed"] = e.passed;
    if (!e.error.empty())
        out["error"] = e.error;
    out["equation"] = e.equation ? to_json(*e.equation) : Json(nullptr);
    out["closed_form"] = e.closed_form ? Json{{"text", e.closed_form->str()}, {"tree", to_json(*e.closed_form)}} : Json(nullptr);
    out["verification"] = Json::array();
    for (const auto& v : e.verification)
        out["verification"].push_back(to_json(v));
    out["checks"] = Json::array();
    for (const auto& c : e.checks)
        out["checks"].push_back(to_json(c));
    return out;
}

Json to_json(const RunReport& r) {
    Json out;
    out["passed"] = r.passed;
    out["entries"] = Json::array();
    for (const auto& e : r.entries)
        out["entries"].push_back(to_json(e));
    return out;
}

} // namespace recsum
