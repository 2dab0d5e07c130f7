#include "recsum/dsl/recurrence.hpp"

#include "support/corpus_files.hpp"

#include <doctest.h>

#include <algorithm>

using namespace recsum;

namespace {

bool has(const Diagnostics& ds, Severity s, const std::string& message) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) {
        return d.severity == s && d.message == message;
    });
}

bool no_errors(const Diagnostics& ds) {
    return std::none_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

} // namespace

TEST_CASE("binomial recurrence validates with a first-order note") {
    const Diagnostics ds = validate(parse_recurrence(testing::corpus_text("binomial")));
    CHECK(no_errors(ds));
    CHECK(has(ds, Severity::Note, "degree 1 → first-order ODE"));
}

TEST_CASE("leading coefficient root inside the range") {
    const Diagnostics ds = validate(parse_recurrence("seq a; rec: (n-3)*a[n+1] - a[n] = 0; range: n>=0; init: a[0]=1;"));
    CHECK(has(ds, Severity::Warning, "leading coefficient zero at n=3"));
    const Diagnostics below = validate(parse_recurrence("seq a; rec: (n+3)*a[n+1] - a[n] = 0; range: n>=0;"));
    CHECK(std::none_of(below.begin(), below.end(), [](const Diagnostic& d) { return d.severity == Severity::Warning; }));
}

TEST_CASE("bilateral recurrence with initial values") {
    const Diagnostics ds =
        validate(parse_recurrence("seq J; const z; rec: z*J[n+1] - 2*n*J[n] + z*J[n-1] = 0; range: bilateral; init: J[0]=1;"));
    CHECK(has(ds, Severity::Warning, "initial values ignored in bilateral mode"));
}

TEST_CASE("higher degree and missing initial values") {
    const Diagnostics ds = validate(parse_recurrence("seq a; rec: n^2*a[n+1] - a[n] = 0; range: n>=1;"));
    CHECK(has(ds, Severity::Warning, "degree 2 → order-2 ODE, which the solver emits unsolved"));
    CHECK(has(ds, Severity::Note, "a[1] has no initial value and stays symbolic"));
    const Diagnostics cosine = validate(parse_recurrence(testing::corpus_text("cosine")));
    CHECK(has(cosine, Severity::Note, "constant coefficients → algebraic equation"));
}

TEST_CASE("every diagnostic span lies inside the source text") {
    for (const auto& id : testing::corpus_ids()) {
        const std::string text = testing::corpus_text(id);
        const ParseResult result = parse_with_diagnostics(text);
        REQUIRE(result.recurrence);
        for (const auto& d : result.diagnostics) {
            CHECK(d.span.begin <= d.span.end);
            CHECK(d.span.end <= text.size());
        }
    }
}
