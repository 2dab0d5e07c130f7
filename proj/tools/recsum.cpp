#include "recsum/corpus/corpus.hpp"
#include "recsum/core/error.hpp"
#include "recsum/io/json.hpp"
#include "recsum/oracle/oracle.hpp"
#include "recsum/solve/series.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace recsum;

namespace {

constexpr const char* kGrammar = R"(recurrence file grammar:
  seq a;                      sequence being summed
  seq b external;             forcing sequence (right-hand side b[n])
  const c [= value];          symbolic constant, optional numeric value
  rec: sum_m p_m(n)*a[n+m] = 0 | [-]b[n];
  range: n>=n0 | n0..N | bilateral;
  init: a[k] = value, ...;    optional
  alias: a[k] = [-]a[j];      optional
  # comment to end of line)";

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

struct Options {
    std::string rec;
    std::string mode;
    bool json = false;
    int terms = 10;
    std::vector<std::string> x;
    std::vector<long> N;
    std::vector<std::string> bind;
    std::vector<std::string> init;
    unsigned precision = kDefaultPrecisionBits;
    std::string tol = "1e-12";
    std::string corpus_dir = default_corpus_directory();
    std::string corpus_id = "all";
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw Error(ErrorKind::SyntaxError, std::string(flag) + " expects name=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

EquationMode mode_for(const Options& o, const Recurrence& r) {
    if (!o.mode.empty()) {
        auto m = parse_mode(o.mode);
        if (!m)
            throw Error(ErrorKind::SyntaxError, "--mode must be finite, infinite or bilateral");
        return *m;
    }
    switch (r.range.kind) {
    case RangeKind::Finite: return EquationMode::Finite;
    case RangeKind::Bilateral: return EquationMode::Bilateral;
    case RangeKind::OneSided: break;
    }
    return EquationMode::Infinite;
}

/// Exact bindings become a substitution, the rest numbers; atom hints fill
/// the gaps.
struct ParsedBindings {
    Substitution exact;
    Bindings numeric;
};

ParsedBindings parse_bindings(const Options& o, const Recurrence& r) {
    ParsedBindings out;
    PrecisionScope scope(o.precision);
    for (const auto& b : o.bind) {
        const auto [name, value] = split_assignment(b, "--bind");
        if (auto q = Rational::parse(value))
            out.exact.insert_or_assign(name, Coeff(*q));
        else
            out.numeric.insert_or_assign(name, parse_real_expression(value));
    }
    for (const auto& a : r.atoms)
        if (a.numeric_hint && !out.exact.count(a.name) && !out.numeric.count(a.name))
            out.numeric.emplace(a.name, parse_real_expression(*a.numeric_hint));
    return out;
}

std::optional<InitialCondition> parse_init(const Options& o) {
    if (o.init.empty())
        return std::nullopt;
    if (o.init.size() > 1)
        throw Error(ErrorKind::SyntaxError, "--init may be given once");
    const auto [point, value] = split_assignment(o.init.front(), "--init");
    const auto p = Rational::parse(point);
    const auto v = Rational::parse(value);
    if (!p || !v)
        throw Error(ErrorKind::SyntaxError, "--init expects exact rationals, got '" + o.init.front() + "'");
    return InitialCondition{Coeff(*p), ClosedForm::constant(Coeff(*v))};
}

struct Pipeline {
    Recurrence r;
    FunctionalEquation eq;
    SolveResult solved;
};

Pipeline run_pipeline(const Options& o) {
    Recurrence r = load_recurrence(o.rec);
    FunctionalEquation eq = derive_equation(r, mode_for(o, r));
    SolveResult solved = solve(eq, parse_init(o));
    return {std::move(r), std::move(eq), std::move(solved)};
}

int cmd_parse(const Options& o) {
    const ParseResult parsed = parse_with_diagnostics([&] {
        std::ifstream in(o.rec);
        if (!in)
            throw Error(ErrorKind::Io, "cannot open " + o.rec);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }());
    bool errors = !parsed.recurrence;
    for (const auto& d : parsed.diagnostics)
        errors = errors || d.severity == Severity::Error;
    if (o.json) {
        Json out;
        out["recurrence"] = parsed.recurrence ? to_json(*parsed.recurrence) : Json(nullptr);
        out["diagnostics"] = to_json(parsed.diagnostics);
        print_json(out);
    } else {
        if (parsed.recurrence)
            std::cout << print_recurrence(*parsed.recurrence);
        for (const auto& d : parsed.diagnostics)
            std::cerr << o.rec << ":" << d.span.line << ":" << d.span.column << ": " << to_string(d.severity) << ": "
                      << d.message << "\n";
        if (errors)
            std::cerr << kGrammar << "\n";
    }
    return errors ? kUsage : kOk;
}

int cmd_derive(const Options& o) {
    const Recurrence r = load_recurrence(o.rec);
    const FunctionalEquation eq = derive_equation(r, mode_for(o, r));
    if (o.json)
        print_json(to_json(eq));
    else
        std::cout << to_string(eq) << "\n";
    return kOk;
}

int cmd_solve(const Options& o) {
    const Pipeline p = run_pipeline(o);
    if (o.json) {
        Json out;
        out["equation"] = to_json(p.eq);
        if (const auto* cf = std::get_if<ClosedForm>(&p.solved)) {
            out["solved"] = true;
            out["closed_form"] = Json{{"text", cf->str()}, {"tree", to_json(*cf)}};
        } else {
            out["solved"] = false;
            out["reason"] = std::get<Unsolved>(p.solved).reason;
        }
        print_json(out);
    } else if (const auto* cf = std::get_if<ClosedForm>(&p.solved)) {
        std::cout << p.eq.sequence << " generating function = " << cf->str() << "\n";
    } else {
        std::cout << "unsolved (" << std::get<Unsolved>(p.solved).reason << "): " << to_string(p.eq) << "\n";
    }
    return kOk;
}

ClosedForm solved_form(const SolveResult& solved) {
    if (const auto* cf = std::get_if<ClosedForm>(&solved))
        return *cf;
    throw Error(ErrorKind::UnsupportedShape, "equation not solved: " + std::get<Unsolved>(solved).reason);
}

int cmd_expand(const Options& o) {
    const Pipeline p = run_pipeline(o);
    const ParsedBindings b = parse_bindings(o, p.r);
    ClosedForm cf = specialize(solved_form(p.solved), b.exact);
    if (p.eq.mode == EquationMode::Bilateral) {
        const BilateralExpansion e = expand_bilateral(cf, o.terms, b.numeric, o.precision);
        PrecisionScope scope(o.precision);
        Json out = Json::array();
        for (long n = -o.terms; n <= o.terms; ++n) {
            if (o.json)
                out.push_back(Json{{"n", n}, {"coefficient", format_real(e.coefficient(n), 30)}});
            else
                std::cout << "[" << n << "] " << format_real(e.coefficient(n), 30) << "\n";
        }
        if (o.json)
            print_json(Json{{"bilateral", true}, {"coefficients", out}});
        return kOk;
    }
    if (p.eq.mode == EquationMode::Finite) {
        if (o.N.size() != 1)
            throw Error(ErrorKind::SyntaxError, "finite-mode expansion needs one --N");
        const long N = o.N.front();
        const OracleSequence seq = unroll(p.r, N + std::max<long>(p.r.max_shift(), 0), b.exact);
        std::map<long, Coeff> values;
        for (long k = p.r.min_shift(); k <= p.r.max_shift(); ++k)
            if (seq.contains(N + k))
                values.emplace(N + k, seq.exact_terms.at(N + k));
        cf = solved_form(solve(specialize_equation(p.eq, b.exact, N, values), parse_init(o)));
    }
    const SeriesExpansion s = expand_series(cf, o.terms, b.numeric, o.precision);
    if (o.json) {
        print_json(to_json(s));
    } else {
        PrecisionScope scope(o.precision);
        for (std::size_t i = 0; i < s.size(); ++i)
            std::cout << "[" << s.start + static_cast<long>(i) << "] "
                      << (s.exact ? s.exact_coeffs[i].str() : format_real(s.numeric_coeffs[i], 30)) << "\n";
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    const Pipeline p = run_pipeline(o);
    const ClosedForm cf = solved_form(p.solved);
    PlanSpec spec;
    spec.label = o.rec;
    spec.points = o.x.empty() ? std::vector<std::string>{"1/2", "-1/2", "1/3"} : o.x;
    spec.upper_limits = o.N.empty() && p.eq.mode == EquationMode::Finite ? std::vector<long>{0, 1, 5, 20} : o.N;
    spec.tolerance = o.tol;
    spec.truncation = o.terms;
    const ParsedBindings b = parse_bindings(o, p.r);
    spec.exact_values = b.exact;
    VerificationPlan plan = build_plan(spec, p.r, p.eq.mode, o.precision);
    for (const auto& [name, v] : b.numeric)
        plan.bindings.insert_or_assign(name, v);
    const VerificationReport report = verify_closed_form(cf, p.r, plan, o.rec);
    if (o.json) {
        print_json(to_json(report));
    } else {
        for (const auto& c : report.comparisons) {
            std::cout << (c.passed ? "ok   " : "FAIL ") << "x=" << c.point;
            if (c.upper_limit)
                std::cout << " N=" << *c.upper_limit;
            if (!c.error.empty())
                std::cout << "  " << c.error << "\n";
            else
                std::cout << "  oracle " << c.oracle << "  closed form " << c.closed_form << "  |diff| "
                          << format_real(c.abs_residual, 3) << "\n";
        }
        std::cout << "verdict: " << to_string(report.verdict) << "\n";
    }
    return report.verdict == Verdict::Fail ? kFail : kOk;
}

int cmd_corpus(const Options& o) {
    const CorpusConfig config = load_corpus(o.corpus_dir);
    const RunReport run = run_corpus(o.corpus_id, config);
    if (o.json) {
        print_json(to_json(run));
    } else {
        for (const auto& e : run.entries) {
            std::cout << (e.passed ? "PASS " : "FAIL ") << e.id << " (" << to_string(e.route) << ", "
                      << to_string(e.mode) << ")\n";
            if (!e.error.empty())
                std::cout << "  error: " << e.error << "\n";
            if (e.closed_form)
                std::cout << "  closed form: " << e.closed_form->str() << "\n";
            for (const auto& v : e.verification)
                std::cout << "  verify " << v.subject << ": " << to_string(v.verdict) << " ("
                          << v.comparisons.size() << " points)\n";
            for (const auto& c : e.checks) {
                std::cout << "  check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.cases
                          << " cases, " << c.failures << " failures)\n";
                for (const auto& d : c.details)
                    std::cout << "    " << d << "\n";
            }
        }
        std::cout << (run.passed ? "corpus: PASS" : "corpus: FAIL") << "\n";
    }
    return run.passed ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generating functions of recurrence-defined sums"};
    app.require_subcommand(1);
    app.footer(kGrammar);
    Options o;

    auto add_rec = [&](CLI::App* sub) { sub->add_option("--rec", o.rec, "recurrence file")->required(); };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "finite | infinite | bilateral (default from the range)");
    };
    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
    auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--bind", o.bind, "name=value, repeatable; exact rationals stay exact");
        sub->add_option("--precision", o.precision, "working precision in bits");
        sub->add_option("--init", o.init, "initial condition point=value");
    };

    auto* parse = app.add_subcommand("parse", "parse and validate a recurrence");
    add_rec(parse);
    add_json(parse);

    auto* derive = app.add_subcommand("derive", "derive the functional equation");
    add_rec(derive);
    add_mode(derive);
    add_json(derive);

    auto* solve_cmd = app.add_subcommand("solve", "solve the functional equation");
    add_rec(solve_cmd);
    add_mode(solve_cmd);
    add_json(solve_cmd);
    solve_cmd->add_option("--init", o.init, "initial condition point=value");

    auto* expand = app.add_subcommand("expand", "series coefficients of the closed form");
    add_rec(expand);
    add_mode(expand);
    add_json(expand);
    add_numeric(expand);
    expand->add_option("--terms", o.terms, "highest power K");
    expand->add_option("--N", o.N, "upper limit for finite mode");

    auto* verify = app.add_subcommand("verify", "check the closed form against the unrolled recurrence");
    add_rec(verify);
    add_mode(verify);
    add_json(verify);
    add_numeric(verify);
    verify->add_option("--x", o.x, "evaluation point, repeatable");
    verify->add_option("--N", o.N, "upper limit, repeatable");
    verify->add_option("--tol", o.tol, "tolerance");
    verify->add_option("--terms", o.terms, "bilateral truncation K");

    auto* corpus = app.add_subcommand("corpus", "built-in case studies");
    corpus->require_subcommand(1);
    auto* run = corpus->add_subcommand("run", "run one entry or all");
    run->add_option("id", o.corpus_id, "entry id or all");
    run->add_option("--corpus-dir", o.corpus_dir, "directory holding corpus.json");
    add_json(run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*parse)
            return cmd_parse(o);
        if (*derive)
            return cmd_derive(o);
        if (*solve_cmd)
            return cmd_solve(o);
        if (*expand)
            return cmd_expand(o);
        if (*verify)
            return cmd_verify(o);
        return cmd_corpus(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::SyntaxError)
            std::cerr << kGrammar << "\n";
        return kUsage;
    }
}
