#pragma once

#include "recsum/io/json.hpp"
#include "recsum/oracle/verify.hpp"
#include "recsum/solve/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace recsum {

enum class SolverRoute { Algebraic, FirstOrder, ReportOnly };

std::string_view to_string(SolverRoute route);
std::optional<SolverRoute> parse_route(std::string_view text);

/// Verification plan as written in the corpus configuration.
struct PlanSpec {
    std::string label;
    std::optional<EquationMode> mode;
    std::vector<std::string> points;
    std::vector<long> upper_limits;
    Substitution exact_values;
    std::map<std::string, std::string, std::less<>> bindings;
    std::string tolerance = "1e-12";
    std::optional<std::string> quadrature_tolerance;
    long truncation = 40;
};

struct CorpusEntry {
    std::string id;
    std::string file;
    EquationMode mode = EquationMode::Finite;
    SolverRoute route = SolverRoute::Algebraic;
    std::optional<std::pair<std::string, std::string>> initial_condition;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::vector<PlanSpec> verification;
    /// Parameters of the entry's identity checks.
    Json checks = Json::object();
};

struct CorpusConfig {
    /// Directory holding the .rec files.
    std::string directory;
    std::vector<CorpusEntry> entries;
};

/// Reads corpus.json from `directory`.
CorpusConfig load_corpus(const std::string& directory);
CorpusConfig corpus_from_json(const Json& j, const std::string& directory);

/// Default corpus directory compiled into the build.
std::string default_corpus_directory();

struct CheckResult {
    std::string name;
    bool passed = true;
    long cases = 0;
    long failures = 0;
    std::optional<Real> max_residual;
    std::vector<std::string> details;
};

struct EntryReport {
    std::string id;
    SolverRoute route = SolverRoute::Algebraic;
    EquationMode mode = EquationMode::Finite;
    std::optional<FunctionalEquation> equation;
    std::optional<ClosedForm> closed_form;
    std::vector<VerificationReport> verification;
    std::vector<CheckResult> checks;
    std::string error;
    bool passed = false;
};

struct RunReport {
    std::vector<EntryReport> entries;
    bool passed = false;
};

/// Parses the .rec source of an entry. Throws Error on IO or parse failure.
Recurrence load_recurrence(const std::string& path);

/// Turns a plan spec into a VerificationPlan. Atom numeric hints become
/// bindings unless the spec overrides them.
VerificationPlan build_plan(const PlanSpec& spec, const Recurrence& r, EquationMode mode, unsigned precision_bits);

/// Solves eq by the given route. ReportOnly yields Unsolved.
SolveResult solve_by_route(const FunctionalEquation& eq, SolverRoute route,
                           const std::optional<InitialCondition>& init);

EntryReport run_entry(const CorpusEntry& entry, const std::string& directory);

/// Runs one entry by id, or every entry for "all". Throws Error for an
/// unknown id.
RunReport run_corpus(const std::string& id, const CorpusConfig& config);

Json to_json(const CheckResult& c);
Json to_json(const EntryReport& e);
Json to_json(const RunReport& r);

} // namespace recsum
