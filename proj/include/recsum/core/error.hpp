#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace recsum {

enum class ErrorKind {
    DegenerateExpression,
    VariableMismatch,
    UnsupportedDenominator,
    UnboundConstant,
    PoleAtEvaluationPoint,
    SyntaxError,
    DuplicateShift,
    MissingSequenceDecl,
    BilateralWithBoundaries,
    ZeroCoefficient,
    NoInitialCondition,
    PoleAtCenter,
    UnexpandableNode,
    QuadratureFailure,
    LeadingCoefficientZero,
    UnsupportedShape,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries one of the kinds above so
/// callers (and the CLI exit-code logic) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DegenerateExpression: return "DegenerateExpression";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::UnsupportedDenominator: return "UnsupportedDenominator";
    case ErrorKind::UnboundConstant: return "UnboundConstant";
    case ErrorKind::PoleAtEvaluationPoint: return "PoleAtEvaluationPoint";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateShift: return "DuplicateShift";
    case ErrorKind::MissingSequenceDecl: return "MissingSequenceDecl";
    case ErrorKind::BilateralWithBoundaries: return "BilateralWithBoundaries";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::NoInitialCondition: return "NoInitialCondition";
    case ErrorKind::PoleAtCenter: return "PoleAtCenter";
    case ErrorKind::UnexpandableNode: return "UnexpandableNode";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::LeadingCoefficientZero: return "LeadingCoefficientZero";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

} // namespace recsum
