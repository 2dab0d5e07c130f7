#include "recsum/oracle/verify.hpp"

#include "recsum/core/error.hpp"
#include "recsum/oracle/special.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <charconv>

namespace recsum {

namespace {

// Index named by a sequence-value atom such as a[N+1] or a[3].
std::optional<long> sequence_index(const std::string& atom, const std::string& seq, long upper) {
    if (atom.size() < seq.size() + 3 || atom.compare(0, seq.size() + 1, seq + "[") != 0 || atom.back() != ']')
        return std::nullopt;
    std::string body = atom.substr(seq.size() + 1, atom.size() - seq.size() - 2);
    long base = 0;
    if (!body.empty() && body.front() == 'N') {
        base = upper;
        body.erase(0, 1);
        if (body.empty())
            return base;
        if (body.front() == '+')
            body.erase(0, 1);
    }
    long offset = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), offset);
    if (ec != std::errc() || ptr != body.data() + body.size())
        return std::nullopt;
    return base + offset;
}

std::map<std::string, long> sequence_atoms(const ClosedForm& cf, const std::string& seq, long upper) {
    std::map<std::string, long> out;
    for (const auto& a : cf.atoms())
        if (auto index = sequence_index(a, seq, upper))
            out.emplace(a, *index);
    return out;
}

bool covers_atoms(const Recurrence& r, const Substitution& values) {
    for (const auto& a : r.atoms)
        if (!values.count(a.name))
            return false;
    return true;
}

void merge_exact(Bindings& b, const Substitution& values) {
    for (const auto& [name, v] : values)
        if (!b.count(name))
            b.emplace(name, v.evaluate(b));
}

void score(Comparison& c, const Real& oracle, const Real& value, const Real& tolerance) {
    c.oracle = format_real(oracle);
    c.closed_form = format_real(value);
    c.abs_residual = abs(value - oracle);
    c.rel_residual = oracle == 0 ? c.abs_residual : c.abs_residual / abs(oracle);
    c.passed = within_tolerance(oracle, value, tolerance);
}

// Lazily extended numeric oracle for infinite sums.
class GrowingOracle {
public:
    GrowingOracle(const Recurrence& r, const VerificationPlan& plan) : r_(r), plan_(plan) {}

    const Real& at(long n) {
        if (!seq_ || n > seq_->last) {
            long M = seq_ ? seq_->last : 0;
            while (M < n)
                M = std::max<long>(2 * M, 64);
            seq_ = unroll_numeric(r_, M, plan_.bindings, plan_.precision_bits, plan_.forcing);
        }
        return seq_->numeric_terms.at(n);
    }

private:
    const Recurrence& r_;
    const VerificationPlan& plan_;
    std::optional<OracleSequence> seq_;
};

Comparison finite_point(const ClosedForm& cf, const Recurrence& r, const VerificationPlan& plan, long N,
                        const PlanPoint& point, const std::optional<OracleSequence>& exact_seq,
                        const OracleSequence& numeric_seq) {
    Comparison c;
    c.point = point.text;
    c.upper_limit = N;
    const auto seq_atoms = sequence_atoms(cf, r.sequence, N);
    const long n0 = r.range.n0;

    if (exact_seq && point.exact) {
        Substitution subs = plan.exact_values;
        subs.insert_or_assign(kUpperLimit, Coeff(N));
        bool rational = true;
        for (const auto& [name, index] : seq_atoms) {
            const Coeff& v = exact_seq->exact_terms.at(index);
            rational = rational && v.is_rational();
            subs.insert_or_assign(name, v);
        }
        const Coeff x(*point.exact);
        Coeff oracle;
        Coeff power = x.pow(n0);
        for (long n = n0; n <= N; ++n) {
            oracle += exact_seq->exact_terms.at(n) * power;
            power *= x;
        }
        if (rational && oracle.is_rational()) {
            if (auto value = eval_exact(specialize(cf, subs), x); value && value->is_rational()) {
                c.exact = true;
                c.oracle = oracle.str();
                c.closed_form = value->str();
                c.passed = *value == oracle;
                if (!c.passed) {
                    PrecisionScope scope(plan.precision_bits);
                    c.abs_residual = abs(to_real(value->rational() - oracle.rational()));
                    c.rel_residual = oracle.is_zero() ? c.abs_residual : c.abs_residual / abs(to_real(oracle.rational()));
                }
                return c;
            }
        }
    }

    PrecisionScope scope(plan.precision_bits);
    Bindings b = plan.bindings;
    merge_exact(b, plan.exact_values);
    b.insert_or_assign(kUpperLimit, Real(N));
    for (const auto& [name, index] : seq_atoms)
        b.insert_or_assign(name, numeric_seq.value(index, b));
    const Real oracle = partial_sum(numeric_seq, n0, point.value, N, b);
    const Real value = eval_closed_form(cf, point.value, b, plan.precision_bits, plan.quadrature);
    score(c, oracle, value, plan.tolerance);
    return c;
}

Comparison infinite_point(const ClosedForm& cf, const Recurrence& r, const VerificationPlan& plan,
                          GrowingOracle& oracle_terms, const PlanPoint& point) {
    Comparison c;
    c.point = point.text;
    PrecisionScope scope(plan.precision_bits);
    const long n0 = r.range.n0;
    const Real& x = point.value;
    auto term = [&](long n) { return oracle_terms.at(n) * pow(x, n); };
    const Truncation t = choose_truncation(term, n0, plan.tolerance);
    c.truncation = t.K;
    Real oracle = 0;
    for (long n = n0; n <= t.K; ++n)
        oracle += term(n);
    Bindings b = plan.bindings;
    merge_exact(b, plan.exact_values);
    for (const auto& [name, index] : sequence_atoms(cf, r.sequence, 0))
        b.insert_or_assign(name, oracle_terms.at(index));
    const Real value = eval_closed_form(cf, x, b, plan.precision_bits, plan.quadrature);
    score(c, oracle, value, plan.tolerance);
    return c;
}

Comparison bilateral_point(const ClosedForm& cf, const VerificationPlan& plan, const PlanPoint& point) {
    Comparison c;
    c.point = point.text;
    if (!plan.term_oracle)
        throw Error(ErrorKind::UnsupportedShape, "bilateral verification needs a term oracle");
    PrecisionScope scope(plan.precision_bits);
    const long K = plan.bilateral_truncation;
    c.truncation = K;
    Real oracle = 0;
    for (long n = -K; n <= K; ++n)
        oracle += plan.term_oracle(n) * pow(point.value, n);
    Bindings b = plan.bindings;
    merge_exact(b, plan.exact_values);
    const Real value = eval_closed_form(cf, point.value, b, plan.precision_bits, plan.quadrature);
    score(c, oracle, value, plan.tolerance);
    return c;
}

} // namespace

PlanPoint plan_point(const std::string& text) {
    PlanPoint p;
    p.text = text;
    p.exact = Rational::parse(text);
    PrecisionScope scope(kDefaultPrecisionBits);
    p.value = p.exact ? to_real(*p.exact) : parse_real_expression(text);
    return p;
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::ExactMatch: return "exact-match";
    case Verdict::WithinTolerance: return "within-tolerance";
    case Verdict::Fail: return "FAIL";
    }
    return "FAIL";
}

bool within_tolerance(const Real& oracle, const Real& value, const Real& tolerance) {
    const Real diff = abs(value - oracle);
    if (abs(oracle) < 1)
        return diff <= tolerance;
    return diff <= tolerance * abs(oracle);
}

void finalize(VerificationReport& report) {
    report.max_abs_residual = 0;
    report.max_rel_residual = 0;
    bool all_exact = !report.comparisons.empty();
    bool all_passed = true;
    for (const auto& c : report.comparisons) {
        report.max_abs_residual = std::max(report.max_abs_residual, c.abs_residual);
        report.max_rel_residual = std::max(report.max_rel_residual, c.rel_residual);
        all_exact = all_exact && c.exact;
        all_passed = all_passed && c.passed;
    }
    report.verdict = !all_passed ? Verdict::Fail : all_exact ? Verdict::ExactMatch : Verdict::WithinTolerance;
}

VerificationReport verify_closed_form(const ClosedForm& cf, const Recurrence& r, const VerificationPlan& plan,
                                      const std::string& subject) {
    VerificationReport report;
    report.subject = subject.empty() ? r.sequence : subject;
    auto attempt = [&](Comparison seed, const std::function<Comparison()>& run) {
        try {
            report.comparisons.push_back(run());
        } catch (const Error& e) {
            seed.passed = false;
            seed.error = e.what();
            report.comparisons.push_back(std::move(seed));
        }
    };
    switch (plan.mode) {
    case EquationMode::Finite:
        for (long N : plan.upper_limits) {
            const long M = N + std::max<long>(r.max_shift(), 0);
            std::optional<OracleSequence> exact_seq;
            std::optional<OracleSequence> numeric_seq;
            std::string setup_error;
            try {
                if (covers_atoms(r, plan.exact_values))
                    exact_seq = unroll(r, M, plan.exact_values);
                if (exact_seq && !plan.forcing) {
                    numeric_seq = exact_seq;
                } else {
                    Bindings b = plan.bindings;
                    merge_exact(b, plan.exact_values);
                    numeric_seq = unroll_numeric(r, M, b, plan.precision_bits, plan.forcing);
                }
            } catch (const Error& e) {
                setup_error = e.what();
            }
            for (const auto& p : plan.points) {
                Comparison seed;
                seed.point = p.text;
                seed.upper_limit = N;
                if (!numeric_seq) {
                    seed.error = setup_error;
                    report.comparisons.push_back(seed);
                    continue;
                }
                attempt(seed, [&] { return finite_point(cf, r, plan, N, p, exact_seq, *numeric_seq); });
            }
        }
        break;
    case EquationMode::Infinite: {
        Bindings b = plan.bindings;
        merge_exact(b, plan.exact_values);
        VerificationPlan numeric_plan = plan;
        numeric_plan.bindings = b;
        GrowingOracle oracle(r, numeric_plan);
        for (const auto& p : plan.points) {
            Comparison seed;
            seed.point = p.text;
            attempt(seed, [&] { return infinite_point(cf, r, numeric_plan, oracle, p); });
        }
        break;
    }
    case EquationMode::Bilateral:
        for (const auto& p : plan.points) {
            Comparison seed;
            seed.point = p.text;
            attempt(seed, [&] { return bilateral_point(cf, plan, p); });
        }
        break;
    }
    finalize(report);
    return report;
}

} // namespace recsum
