#pragma once

#include "recsum/core/coeff.hpp"
#include "recsum/core/error.hpp"
#include "recsum/core/poly.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace recsum {

/// Byte range [begin, end) in the source text plus the 1-based position of
/// `begin`.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

enum class Severity { Error, Warning, Note };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
};

using Diagnostics = std::vector<Diagnostic>;

std::string_view to_string(Severity severity);

enum class RangeKind { OneSided, Finite, Bilateral };

/// n >= n0, n0..N, or all integers.
struct IndexRange {
    RangeKind kind = RangeKind::OneSided;
    long n0 = 0;

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// coeff(n) * a[n + shift].
struct RecurrenceTerm {
    long shift = 0;
    Poly coeff{"n"};
    SourceSpan span;

    friend bool operator==(const RecurrenceTerm& a, const RecurrenceTerm& b) {
        return a.shift == b.shift && a.coeff == b.coeff;
    }
};

/// Right-hand side sign * b[n] of an inhomogeneous recurrence.
struct Forcing {
    std::string sequence;
    int sign = 1;

    friend bool operator==(const Forcing&, const Forcing&) = default;
};

/// a[index] = sign * a[target].
struct Alias {
    long target = 0;
    int sign = 1;

    friend bool operator==(const Alias&, const Alias&) = default;
};

struct RecurrenceSpans {
    SourceSpan equation;
    SourceSpan range;
    std::optional<SourceSpan> init;
    std::optional<SourceSpan> alias;
};

/**
 * Linear recurrence sum_m coeff_m(n) a[n+m] = forcing, with polynomial
 * coefficients over Q(atoms). Terms are kept in decreasing shift order.
 * Equality ignores source spans.
 */
struct Recurrence {
    std::string sequence;
    std::vector<std::string> external_sequences;
    std::vector<ConstAtom> atoms;
    std::vector<RecurrenceTerm> terms;
    std::optional<Forcing> forcing;
    IndexRange range;
    std::map<long, CoeffExpr> initial_values;
    std::map<long, Alias> aliases;
    RecurrenceSpans spans;

    long max_shift() const { return terms.front().shift; }
    long min_shift() const { return terms.back().shift; }
    long order() const { return max_shift() - min_shift(); }
    int max_degree() const;
    const RecurrenceTerm* term(long shift) const;
    const ConstAtom* atom(std::string_view name) const;

    /// Name of the symbolic unknown standing for a[index].
    std::string value_symbol(long index) const;
    /// Initial value at `index` if one was given.
    std::optional<Coeff> initial_value(long index) const;

    friend bool operator==(const Recurrence& a, const Recurrence& b);
};

/// Parse failure. The span locates the offending token.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, SourceSpan span);
    const SourceSpan& span() const noexcept { return span_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    SourceSpan span_;
    std::string detail_;
};

/// Throws ParseError (SyntaxError, DuplicateShift or MissingSequenceDecl).
Recurrence parse_recurrence(std::string_view text);

struct ParseResult {
    std::optional<Recurrence> recurrence;
    Diagnostics diagnostics;
};

/// Non-throwing variant: either a recurrence and its validation
/// diagnostics, or no recurrence and at least one error.
ParseResult parse_with_diagnostics(std::string_view text);

Diagnostics validate(const Recurrence& r);

/// Canonical DSL text; parse_recurrence(print_recurrence(r)) == r.
std::string print_recurrence(const Recurrence& r);

/// Canonical rendering of a coefficient polynomial in n.
std::string coeff_poly_str(const Poly& p);

} // namespace recsum
