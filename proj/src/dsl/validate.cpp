#include "recsum/core/partial_fractions.hpp"
#include "recsum/dsl/recurrence.hpp"

namespace recsum {

Diagnostics validate(const Recurrence& r) {
    Diagnostics out;
    const RecurrenceTerm& lead = r.terms.front();
    const bool one_sided = r.range.kind != RangeKind::Bilateral;

    if (one_sided && lead.coeff.degree() > 0 && lead.coeff.is_pure_rational()) {
        for (const auto& [root, mult] : rational_roots(lead.coeff).roots) {
            if (root.is_integer() && root >= Rational(r.range.n0))
                out.push_back({Severity::Warning, "leading coefficient zero at n=" + root.str(), lead.span});
        }
    }

    if (!one_sided) {
        if (!r.initial_values.empty())
            out.push_back({Severity::Warning, "initial values ignored in bilateral mode", *r.spans.init});
        if (!r.aliases.empty())
            out.push_back({Severity::Warning, "aliases ignored in bilateral mode", *r.spans.alias});
    } else if (r.terms.size() >= 2) {
        for (long j = r.range.n0; j < r.range.n0 + r.order(); ++j)
            if (!r.initial_values.count(j))
                out.push_back({Severity::Note, r.value_symbol(j) + " has no initial value and stays symbolic",
                               r.spans.range});
    }

    const int degree = r.max_degree();
    if (degree == 0)
        out.push_back({Severity::Note, "constant coefficients → algebraic equation", r.spans.equation});
    else if (degree == 1)
        out.push_back({Severity::Note, "degree 1 → first-order ODE", r.spans.equation});
    else
        out.push_back({Severity::Warning,
                       "degree " + std::to_string(degree) + " → order-" + std::to_string(degree) +
                           " ODE, which the solver emits unsolved",
                       r.spans.equation});
    return out;
}

} // namespace recsum
