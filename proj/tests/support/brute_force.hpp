#pragma once

// Independent oracles for tests: naive unrolling of a recurrence and
// truncated generating functions. Nothing here calls the engine's own
// oracle module.

#include "recsum/dsl/recurrence.hpp"
#include "recsum/gf/equation.hpp"

#include <map>

namespace recsum::testing {

/// a_j for n0 + min_shift <= j <= M + max_shift - min_shift. Missing initial
/// values become atoms named a[j]; the forcing sequence is symbolic b[n].
inline std::map<long, Coeff> brute_unroll(const Recurrence& r, long M) {
    std::map<long, Coeff> a;
    const long n0 = r.range.n0;
    for (long j = n0; j < n0 + r.order(); ++j) {
        auto v = r.initial_value(j);
        a[j] = v ? *v : Coeff::atom(r.value_symbol(j));
    }
    auto rhs = [&](long n) {
        if (!r.forcing)
            return Coeff(0);
        return Coeff(r.forcing->sign) * Coeff::atom(r.forcing->sequence + "[" + std::to_string(n) + "]");
    };
    // Forward: solve for the highest shift.
    for (long n = n0 - r.min_shift(); n + r.max_shift() <= M + r.order(); ++n) {
        Coeff acc = rhs(n);
        for (const auto& t : r.terms)
            if (t.shift != r.max_shift())
                acc -= t.coeff.evaluate(Coeff(n)) * a.at(n + t.shift);
        a[n + r.max_shift()] = acc / r.terms.front().coeff.evaluate(Coeff(n));
    }
    // Backward: values below the range from the lowest shift.
    for (long n = n0 - r.min_shift() - 1; n >= n0; --n) {
        const Coeff trailing = r.terms.back().coeff.evaluate(Coeff(n));
        if (trailing.is_zero())
            break;
        Coeff acc = rhs(n);
        for (const auto& t : r.terms)
            if (t.shift != r.min_shift())
                acc -= t.coeff.evaluate(Coeff(n)) * a.at(n + t.shift);
        a[n + r.min_shift()] = acc / trailing;
    }
    return a;
}

/// sum_{n=from}^{to} values[n] x^n.
inline RationalFunction truncated_series(const std::map<long, Coeff>& values, long from, long to) {
    RationalFunction s = RationalFunction::constant(Coeff(0));
    for (long n = from; n <= to; ++n)
        s = s + RationalFunction::laurent_monomial(values.at(n), static_cast<int>(n));
    return s;
}

/// Left-hand side of `eq` with S replaced by the truncated oracle series
/// and N = M; zero for a correct finite-mode equation.
inline RationalFunction finite_residual(const FunctionalEquation& eq, const Recurrence& r, long M) {
    const auto a = brute_unroll(r, M);
    RationalFunction S = truncated_series(a, r.range.n0, M);
    RationalFunction total = RationalFunction::constant(Coeff(0));
    RationalFunction derivative = S;
    for (int j = 0; j <= eq.order; ++j) {
        total = total + eq.coeffs[j] * derivative;
        derivative = derivative.derivative();
    }
    const Substitution at_m{{kUpperLimit, Coeff(M)}};
    for (const auto& b : eq.boundary) {
        const bool tail = b.kind == BoundaryKind::Tail;
        Coeff c = b.coeff.substitute(at_m);
        if (b.index)
            c *= a.at(tail ? M + *b.index : *b.index);
        total = total + RationalFunction::laurent_monomial(c, static_cast<int>(tail ? M + b.power : b.power));
    }
    for (const auto& f : eq.forcing) {
        std::map<long, Coeff> bs;
        for (long n = r.range.n0; n <= M; ++n)
            bs[n] = Coeff::atom(f.sequence + "[" + std::to_string(n) + "]");
        total = total + f.multiplier * truncated_series(bs, r.range.n0, M);
    }
    return total;
}

// Applies sum_j c_j D^j to x^n.
inline RationalFunction apply_derivatives(const std::vector<std::pair<int, RationalFunction>>& ops, long n) {
    RationalFunction total = RationalFunction::constant(Coeff(0));
    for (const auto& [j, c] : ops) {
        Coeff falling(1);
        for (int i = 0; i < j; ++i)
            falling *= Coeff(n - i);
        total = total + c * RationalFunction::laurent_monomial(falling, static_cast<int>(n - j));
    }
    return total;
}

} // namespace recsum::testing
