#include "recsum/gf/equation.hpp"

#include <algorithm>
#include <cctype>

namespace recsum {

namespace {

Coeff upper_limit() { return Coeff::atom(kUpperLimit); }

RationalFunction x_power(const Coeff& c, long k) {
    return RationalFunction::laurent_monomial(c, static_cast<int>(k), kGfVariable);
}

// Head/tail corrections for sum_{k} P(k) a_k x^(k-m) versus x^(-m) sum_{n0..N}.
std::vector<BoundaryTerm> boundary_of(const Poly& P, long m, long n0) {
    std::vector<BoundaryTerm> out;
    auto push = [&](BoundaryTerm t) {
        if (!t.coeff.is_zero())
            out.push_back(std::move(t));
    };
    if (m > 0) {
        for (long j = 1; j <= m; ++j)
            push({BoundaryKind::Tail, j, j - m, P.evaluate(upper_limit() + Coeff(j))});
        for (long k = n0; k <= n0 + m - 1; ++k)
            push({BoundaryKind::Head, k, k - m, -P.evaluate(Coeff(k))});
    } else if (m < 0) {
        for (long j = m + 1; j <= 0; ++j)
            push({BoundaryKind::Tail, j, j - m, -P.evaluate(upper_limit() + Coeff(j))});
        for (long k = n0 + m; k <= n0 - 1; ++k)
            push({BoundaryKind::Head, k, k - m, P.evaluate(Coeff(k))});
    }
    return out;
}

// Follows alias and init clauses for a head index.
BoundaryTerm resolve_head(BoundaryTerm t, const Recurrence& r) {
    long index = *t.index;
    auto alias = r.aliases.find(index);
    if (alias != r.aliases.end()) {
        index = alias->second.target;
        if (alias->second.sign < 0)
            t.coeff = -t.coeff;
    }
    t.index = index;
    if (auto value = r.initial_value(index)) {
        t.coeff *= *value;
        t.index.reset();
    }
    return t;
}

} // namespace

std::string_view to_string(EquationMode mode) {
    switch (mode) {
    case EquationMode::Finite: return "finite";
    case EquationMode::Infinite: return "infinite";
    case EquationMode::Bilateral: return "bilateral";
    }
    return "finite";
}

std::optional<EquationMode> parse_mode(std::string_view text) {
    if (text == "finite")
        return EquationMode::Finite;
    if (text == "infinite")
        return EquationMode::Infinite;
    if (text == "bilateral")
        return EquationMode::Bilateral;
    return std::nullopt;
}

Coeff ThetaPoly::on_monomial(long n) const {
    Coeff total;
    Coeff power(1);
    for (const auto& c : coeffs) {
        total += c * power;
        power *= Coeff(n);
    }
    return total;
}

bool operator==(const FunctionalEquation& a, const FunctionalEquation& b) {
    return a.sequence == b.sequence && a.order == b.order && a.coeffs == b.coeffs && a.boundary == b.boundary &&
           a.forcing == b.forcing && a.mode == b.mode && a.n0 == b.n0 && a.known_values == b.known_values &&
           a.assumptions == b.assumptions;
}

Reindexed reindex_term(const RecurrenceTerm& term, const IndexRange& range) {
    const long m = term.shift;
    const Poly P = term.coeff.shift(m);
    Reindexed out;
    out.contribution.x_power = -m;
    out.contribution.coeffs = P.coeffs();
    if (range.kind != RangeKind::Bilateral)
        out.boundary = boundary_of(P, m, range.n0);
    return out;
}

Rational stirling2(int d, int j) {
    if (j < 0 || j > d)
        return Rational(0);
    // Row-by-row table S(i, k) = k S(i-1, k) + S(i-1, k-1).
    std::vector<Rational> row{Rational(1)};
    for (int i = 1; i <= d; ++i) {
        std::vector<Rational> next(i + 1);
        for (int k = 1; k <= i; ++k) {
            const Rational keep = k < static_cast<int>(row.size()) ? row[k] : Rational(0);
            next[k] = Rational(k) * keep + row[k - 1];
        }
        row = std::move(next);
    }
    return row[j];
}

std::vector<std::pair<int, RationalFunction>> theta_to_derivatives(const ThetaPoly& t) {
    const int degree = static_cast<int>(t.coeffs.size()) - 1;
    std::vector<std::pair<int, RationalFunction>> out;
    for (int j = 0; j <= degree; ++j) {
        Coeff c;
        for (int d = j; d <= degree; ++d)
            c += t.coeffs[d] * Coeff(stirling2(d, j));
        if (!c.is_zero())
            out.emplace_back(j, x_power(c, j + t.x_power));
    }
    return out;
}

FunctionalEquation derive_equation(const Recurrence& r, EquationMode mode) {
    if (r.range.kind == RangeKind::Bilateral)
        mode = EquationMode::Bilateral;
    else if (mode == EquationMode::Bilateral)
        throw Error(ErrorKind::BilateralWithBoundaries,
                    "recurrence for '" + r.sequence + "' has a one-sided range and cannot be summed bilaterally");

    FunctionalEquation eq;
    eq.sequence = r.sequence;
    eq.mode = mode;
    eq.n0 = r.range.n0;
    eq.order = r.max_degree();
    eq.coeffs.assign(eq.order + 1, RationalFunction::constant(Coeff(0), kGfVariable));
    if (mode != EquationMode::Bilateral)
        for (const auto& [index, value] : r.initial_values)
            eq.known_values.emplace(index, value.to_coeff());

    for (const auto& term : r.terms) {
        const Reindexed part = reindex_term(term, r.range);
        for (const auto& [j, c] : theta_to_derivatives(part.contribution))
            eq.coeffs[j] = eq.coeffs[j] + c;
        for (const auto& b : part.boundary) {
            if (b.kind == BoundaryKind::Tail) {
                if (mode == EquationMode::Finite)
                    eq.boundary.push_back(b);
            } else {
                BoundaryTerm resolved = resolve_head(b, r);
                if (!resolved.coeff.is_zero())
                    eq.boundary.push_back(std::move(resolved));
            }
        }
    }
    if (r.forcing)
        eq.forcing.push_back({r.forcing->sequence, x_power(Coeff(-r.forcing->sign), 0)});

    switch (mode) {
    case EquationMode::Finite:
        if (r.range.kind == RangeKind::OneSided)
            eq.assumptions.push_back("summation truncated at the symbolic upper limit N");
        break;
    case EquationMode::Infinite:
        eq.assumptions.push_back("series assumed convergent; tail terms dropped");
        break;
    case EquationMode::Bilateral:
        eq.assumptions.push_back("bilateral series assumed convergent; no boundary terms");
        break;
    }
    for (const auto& b : eq.boundary)
        if (b.kind == BoundaryKind::Head && b.index && *b.index < r.range.n0)
            eq.assumptions.push_back(sequence_value_symbol(r.sequence, *b.index, false) +
                                     " lies below the range and stays a symbolic unknown");
    return eq;
}

std::string gf_symbol(const std::string& sequence, const std::string& variable) {
    std::string name = sequence;
    name.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(name.front())));
    if (name == sequence)
        name = "G_" + sequence;
    return name + "(" + variable + ")";
}

std::string sequence_value_symbol(const std::string& sequence, long index, bool relative_to_n) {
    if (!relative_to_n)
        return sequence + "[" + std::to_string(index) + "]";
    if (index == 0)
        return sequence + "[N]";
    return sequence + "[N" + (index > 0 ? "+" : "-") + std::to_string(index > 0 ? index : -index) + "]";
}

std::string to_string(const BoundaryTerm& term, const std::string& sequence) {
    const bool tail = term.kind == BoundaryKind::Tail;
    std::string power;
    if (tail)
        power = term.power == 0 ? "x^N" : "x^(N" + std::string(term.power > 0 ? "+" : "-") +
                                              std::to_string(std::abs(term.power)) + ")";
    else if (term.power != 0)
        power = term.power == 1 ? "x" : "x^" + (term.power < 0 ? "(" + std::to_string(term.power) + ")" : std::to_string(term.power));
    std::string out = "(" + term.coeff.str() + ")";
    if (term.index)
        out += "*" + sequence_value_symbol(sequence, *term.index, tail);
    if (!power.empty())
        out += "*" + power;
    return out;
}

std::string to_string(const FunctionalEquation& eq) {
    std::string out;
    for (int j = eq.order; j >= 0; --j) {
        if (eq.coeffs[j].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + eq.coeffs[j].str() + ")*S";
        out += j == 0 ? "" : (j <= 3 ? std::string(j, '\'') : "^(" + std::to_string(j) + ")");
    }
    for (const auto& b : eq.boundary)
        out += (out.empty() ? "" : " + ") + to_string(b, eq.sequence);
    for (const auto& f : eq.forcing)
        out += (out.empty() ? "" : " + ") + ("(" + f.multiplier.str() + ")*" + gf_symbol(f.sequence));
    return (out.empty() ? "0" : out) + " = 0";
}

} // namespace recsum
