#include "recsum/dsl/recurrence.hpp"

namespace recsum {

namespace {

std::string index_str(long shift) {
    if (shift == 0)
        return "n";
    return shift > 0 ? "n+" + std::to_string(shift) : "n-" + std::to_string(-shift);
}

// Sign and body of one term; the body never starts with '-'.
std::pair<bool, std::string> term_str(const RecurrenceTerm& t, const std::string& seq) {
    const std::string ref = seq + "[" + index_str(t.shift) + "]";
    if (t.coeff.degree() == 0 && t.coeff[0].is_rational()) {
        const Rational c = t.coeff[0].rational();
        const Rational m = c.abs();
        if (m.is_one())
            return {c.sign() < 0, ref};
        return {c.sign() < 0, (m.is_integer() ? m.str() : "(" + m.str() + ")") + "*" + ref};
    }
    return {false, "(" + coeff_poly_str(t.coeff) + ")*" + ref};
}

} // namespace

std::string coeff_poly_str(const Poly& p) { return p.with_variable("n").str(); }

std::string print_recurrence(const Recurrence& r) {
    std::string out;
    for (const auto& a : r.atoms) {
        out += "const " + a.name;
        if (a.numeric_hint)
            out += " = " + *a.numeric_hint;
        out += ";\n";
    }
    out += "seq " + r.sequence + ";\n";
    for (const auto& e : r.external_sequences)
        out += "seq " + e + " external;\n";

    out += "rec: ";
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const auto [negative, body] = term_str(r.terms[i], r.sequence);
        if (i == 0)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    out += " = ";
    if (r.forcing)
        out += (r.forcing->sign < 0 ? "-" : "") + r.forcing->sequence + "[n]";
    else
        out += "0";
    out += ";\n";

    out += "range: ";
    switch (r.range.kind) {
    case RangeKind::OneSided: out += "n>=" + std::to_string(r.range.n0); break;
    case RangeKind::Finite: out += std::to_string(r.range.n0) + "..N"; break;
    case RangeKind::Bilateral: out += "bilateral"; break;
    }
    out += ";\n";

    if (!r.initial_values.empty()) {
        out += "init: ";
        bool first = true;
        for (const auto& [index, value] : r.initial_values) {
            out += (first ? "" : ", ") + r.value_symbol(index) + " = " + value.str();
            first = false;
        }
        out += ";\n";
    }
    if (!r.aliases.empty()) {
        out += "alias: ";
        bool first = true;
        for (const auto& [index, alias] : r.aliases) {
            out += (first ? "" : ", ") + r.value_symbol(index) + " = " + (alias.sign < 0 ? "-" : "") +
                   r.value_symbol(alias.target);
            first = false;
        }
        out += ";\n";
    }
    return out;
}

} // namespace recsum
