#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mwo {

// Machine-readable failure codes shared by exceptions and validation
// violations. CLI exit codes are derived from these, so the set is closed.
enum class ErrorCode {
    // naming / taxonomy
    DuplicateName,
    InvalidIdentifier,
    UnknownClass,
    UnknownSuperclass,
    CycleDetected,
    // individuals / properties / assertions
    UnknownIndividual,
    UnknownProperty,
    UnknownEntity,
    UntypedIndividual,
    InvalidPropertyDecl,
    WrongPropertyKind,
    RangeMismatch,
    DomainViolation,
    RangeViolation,
    ConflictingAssertion,
    InvalidProfileEntry,
    ValidationFailed,
    // parsing
    ParseSyntax,
    UnknownFeature,
    InvalidFeatureValue,
    DuplicateFeature,
    // classification / discovery
    KindMismatch,
    EmptyService,
    UnsatisfiableRequired,
    InvalidQuery,
    // misc
    IoError,
    Overflow,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
        case ErrorCode::UnknownClass: return "UnknownClass";
        case ErrorCode::UnknownSuperclass: return "UnknownSuperclass";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::UnknownIndividual: return "UnknownIndividual";
        case ErrorCode::UnknownProperty: return "UnknownProperty";
        case ErrorCode::UnknownEntity: return "UnknownEntity";
        case ErrorCode::UntypedIndividual: return "UntypedIndividual";
        case ErrorCode::InvalidPropertyDecl: return "InvalidPropertyDecl";
        case ErrorCode::WrongPropertyKind: return "WrongPropertyKind";
        case ErrorCode::RangeMismatch: return "RangeMismatch";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::RangeViolation: return "RangeViolation";
        case ErrorCode::ConflictingAssertion: return "ConflictingAssertion";
        case ErrorCode::InvalidProfileEntry: return "InvalidProfileEntry";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::ParseSyntax: return "ParseSyntax";
        case ErrorCode::UnknownFeature: return "UnknownFeature";
        case ErrorCode::InvalidFeatureValue: return "InvalidFeatureValue";
        case ErrorCode::DuplicateFeature: return "DuplicateFeature";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::EmptyService: return "EmptyService";
        case ErrorCode::UnsatisfiableRequired: return "UnsatisfiableRequired";
        case ErrorCode::InvalidQuery: return "InvalidQuery";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// Base exception for all toolkit errors; carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// A single structural problem found by Ontology::validate(). Violations are
/// data, not exceptions: a validation run returns all of them.
struct Violation {
    ErrorCode code;
    std::string entity;  // offending class/individual/property name
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(const Violation& v) {
    std::string s{error_code_name(v.code)};
    s += " ";
    s += v.entity;
    if (!v.detail.empty()) {
        s += ": ";
        s += v.detail;
    }
    return s;
}

/// Thrown when a syntactically valid document fails semantic validation.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(ErrorCode::ValidationFailed, summarize(violations)),
          violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string summarize(const std::vector<Violation>& vs) {
        std::string s = "validation failed (" + std::to_string(vs.size()) + " violation";
        if (vs.size() != 1) s += "s";
        s += ")";
        for (const auto& v : vs) {
            s += "\n  ";
            s += to_string(v);
        }
        return s;
    }

    std::vector<Violation> violations_;
};

}  // namespace mwo
