#include "recsum/oracle/oracle.hpp"

#include "recsum/core/error.hpp"

#include <set>

namespace recsum {

namespace {

std::string forcing_symbol(const Recurrence& r, long n) { return r.forcing->sequence + "[" + std::to_string(n) + "]"; }

// Forward substitution over any field. `convert` maps exact coefficients
// into the field, `start` supplies a missing start value, `rhs` the
// forcing at n.
template <typename T, typename Convert, typename Start, typename Rhs>
std::map<long, T> forward(const Recurrence& r, long M, Convert convert, Start start, Rhs rhs) {
    if (r.range.kind == RangeKind::Bilateral)
        throw Error(ErrorKind::UnsupportedShape, "cannot unroll a bilateral recurrence");
    const long n0 = r.range.n0;
    const long hi = r.max_shift();
    std::map<long, T> a;
    std::set<long> fixed;
    for (const auto& [j, v] : r.initial_values) {
        a.emplace(j, convert(v.to_coeff()));
        fixed.insert(j);
    }
    for (long j = n0 + r.min_shift(); j < n0 + hi; ++j) {
        if (a.count(j))
            continue;
        auto alias = r.aliases.find(j);
        if (alias == r.aliases.end()) {
            a.emplace(j, start(j));
            continue;
        }
        const long target = alias->second.target;
        if (!a.count(target)) {
            a.emplace(target, start(target));
            fixed.insert(target);
        }
        a.emplace(j, convert(Coeff(alias->second.sign)) * a.at(target));
    }
    for (long n = n0; n + hi <= M; ++n) {
        if (fixed.count(n + hi))
            continue;
        const T lead = convert(r.terms.front().coeff.evaluate(Coeff(n)));
        if (lead == T(0))
            throw Error(ErrorKind::LeadingCoefficientZero,
                        "leading coefficient vanishes at n=" + std::to_string(n) + ", so " + r.value_symbol(n + hi) +
                            " is undetermined");
        T acc = rhs(n);
        for (const auto& t : r.terms)
            if (t.shift != hi)
                acc -= convert(t.coeff.evaluate(Coeff(n))) * a.at(n + t.shift);
        a[n + hi] = acc / lead;
    }
    for (auto it = a.begin(); it != a.end();)
        it = it->first > M ? a.erase(it) : std::next(it);
    return a;
}

} // namespace

Real OracleSequence::value(long index, const Bindings& bindings) const {
    if (!contains(index))
        throw Error(ErrorKind::UnsupportedShape, sequence + "[" + std::to_string(index) + "] lies outside the oracle");
    if (!exact)
        return numeric_terms.at(index);
    PrecisionScope scope(precision_bits);
    return exact_terms.at(index).evaluate(bindings);
}

OracleSequence unroll(const Recurrence& r, long M, const Substitution& values) {
    OracleSequence out;
    out.sequence = r.sequence;
    out.exact_terms = forward<Coeff>(
        r, M, [&](const Coeff& c) { return c.substitute(values); },
        [&](long j) { return Coeff::atom(r.value_symbol(j)); },
        [&](long n) { return r.forcing ? Coeff(r.forcing->sign) * Coeff::atom(forcing_symbol(r, n)) : Coeff(0); });
    out.first = out.exact_terms.empty() ? 0 : out.exact_terms.begin()->first;
    out.last = out.exact_terms.empty() ? -1 : out.exact_terms.rbegin()->first;
    return out;
}

OracleSequence unroll_numeric(const Recurrence& r, long M, const Bindings& bindings, unsigned precision_bits,
                              const ForcingProvider& forcing) {
    OracleSequence out;
    out.sequence = r.sequence;
    out.exact = false;
    out.precision_bits = precision_bits;
    auto lookup = [&](const std::string& name) {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw Error(ErrorKind::UnboundConstant, "'" + name + "' has no binding");
        return it->second;
    };
    PrecisionScope scope(precision_bits);
    out.numeric_terms = forward<Real>(
        r, M, [&](const Coeff& c) { return c.evaluate(bindings); }, [&](long j) { return lookup(r.value_symbol(j)); },
        [&](long n) -> Real {
            if (!r.forcing)
                return Real(0);
            return r.forcing->sign * (forcing ? forcing(n) : lookup(forcing_symbol(r, n)));
        });
    out.first = out.numeric_terms.empty() ? 0 : out.numeric_terms.begin()->first;
    out.last = out.numeric_terms.empty() ? -1 : out.numeric_terms.rbegin()->first;
    return out;
}

Coeff partial_sum(const Recurrence& r, const Coeff& x, long N, const Substitution& values) {
    const OracleSequence seq = unroll(r, N, values);
    Coeff total;
    Coeff power = x.pow(r.range.n0);
    for (long n = r.range.n0; n <= N; ++n) {
        total += seq.exact_terms.at(n) * power;
        power *= x;
    }
    return total;
}

Real partial_sum(const OracleSequence& seq, long n0, const Real& x, long N, const Bindings& bindings) {
    PrecisionScope scope(seq.precision_bits);
    Real total = 0;
    Real power = pow(x, n0);
    for (long n = n0; n <= N; ++n) {
        total += seq.value(n, bindings) * power;
        power *= x;
    }
    return total;
}

Coeff recurrence_residual(const Recurrence& r, const OracleSequence& seq, long n) {
    if (!seq.exact)
        throw Error(ErrorKind::UnsupportedShape, "exact residual needs an exact oracle");
    Coeff total;
    for (const auto& t : r.terms)
        total += t.coeff.evaluate(Coeff(n)) * seq.exact_terms.at(n + t.shift);
    if (r.forcing)
        total -= Coeff(r.forcing->sign) * Coeff::atom(forcing_symbol(r, n));
    return total;
}

} // namespace recsum
