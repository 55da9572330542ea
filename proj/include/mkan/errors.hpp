#pragma once

#include <stdexcept>
#include <string>

namespace mkan {

// Every condition the CLI maps to a distinct exit code gets its own kind;
// the rest are here so callers can discriminate without string matching.
enum class ErrorKind {
    UnknownOperation,
    ArityMismatch,
    VarOutOfRange,
    SignatureMismatch,
    ShapeError,
    TableShapeError,
    DimensionOutOfRange,
    NoPreimage,
    MissingMaltsevTerm,
    MatchingViolation,
    ResourceLimit,
    BudgetExceeded,
    SyntaxError,
    MaltsevAxiomError,
    ValidationError,
    InvariantViolation,
};

inline const char* error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::UnknownOperation: return "UnknownOperation";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::VarOutOfRange: return "VarOutOfRange";
        case ErrorKind::SignatureMismatch: return "SignatureMismatch";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::TableShapeError: return "TableShapeError";
        case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
        case ErrorKind::NoPreimage: return "NoPreimage";
        case ErrorKind::MissingMaltsevTerm: return "MissingMaltsevTerm";
        case ErrorKind::MatchingViolation: return "MatchingViolation";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::MaltsevAxiomError: return "MaltsevAxiomError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

}
