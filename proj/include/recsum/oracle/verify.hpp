#pragma once

#include "recsum/gf/equation.hpp"
#include "recsum/oracle/oracle.hpp"
#include "recsum/solve/closed_form.hpp"

#include <optional>

namespace recsum {

/// Evaluation point, kept as text and as a number; exact when it parses
/// as a rational.
struct PlanPoint {
    std::string text;
    std::optional<Rational> exact;
    Real value;
};

PlanPoint plan_point(const std::string& text);

/// Points, upper limits and bindings for one verification run.
/// Finite mode compares against partial sums for every (N, point). Infinite
/// mode sums the oracle to the tail-rule truncation. Bilateral mode sums
/// `term_oracle(n) x^n` for |n| <= bilateral_truncation.
struct VerificationPlan {
    EquationMode mode = EquationMode::Finite;
    std::vector<PlanPoint> points;
    std::vector<long> upper_limits;
    /// Exact atom values; when they cover every atom the exact path is used.
    Substitution exact_values;
    Bindings bindings;
    Real tolerance{"1e-12"};
    unsigned precision_bits = kDefaultPrecisionBits;
    long bilateral_truncation = 40;
    std::function<Real(long)> term_oracle;
    ForcingProvider forcing;
    QuadratureSettings quadrature;
};

struct Comparison {
    std::string point;
    std::optional<long> upper_limit;
    std::string oracle;
    std::string closed_form;
    Real abs_residual{0};
    Real rel_residual{0};
    bool exact = false;
    bool passed = false;
    std::optional<long> truncation;
    std::string error;
};

enum class Verdict { ExactMatch, WithinTolerance, Fail };
std::string_view to_string(Verdict v);

struct VerificationReport {
    std::string subject;
    std::vector<Comparison> comparisons;
    Real max_abs_residual{0};
    Real max_rel_residual{0};
    Verdict verdict = Verdict::ExactMatch;
};

/// Absolute tolerance when |oracle| < 1, relative otherwise.
bool within_tolerance(const Real& oracle, const Real& value, const Real& tolerance);

/// Compares cf against the recurrence's oracle at every plan point.
/// Evaluation errors fail the point and the run continues.
VerificationReport verify_closed_form(const ClosedForm& cf, const Recurrence& r, const VerificationPlan& plan,
                                      const std::string& subject = "");

/// Verdict and maxima recomputed from the comparisons.
void finalize(VerificationReport& report);

} // namespace recsum
