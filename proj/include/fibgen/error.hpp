#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibgen {

enum class ErrorCode {
    ShapeMismatch,
    FieldMismatch,
    NotPrime,
    ParseError,
    DependentInput,
    NotASubspace,
    NotAComplex,
    NotAChainMap,
    BadDegree,
    NotACategory,
    NotAssociative,
    NotFunctorial,
    NotNatural,
    NotASquare,
    DegreeViolation,
    FactorizationNotUnique,
    FactorizationMissing,
    NotASubcategory,
    Internal,
};

inline std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::NotASubspace: return "NotASubspace";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::NotAChainMap: return "NotAChainMap";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::NotACategory: return "NotACategory";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NotFunctorial: return "NotFunctorial";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::FactorizationNotUnique: return "FactorizationNotUnique";
    case ErrorCode::FactorizationMissing: return "FactorizationMissing";
    case ErrorCode::NotASubcategory: return "NotASubcategory";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

/// Rejected input. `witness` locates the offending piece (degree, morphism
/// ids, ...) in a human-readable form.
class ValidationError : public std::runtime_error {
public:
    ValidationError(ErrorCode code, std::string witness)
        : std::runtime_error(std::string(error_name(code)) + ": " + witness),
          code_(code), witness_(std::move(witness)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    ErrorCode code_;
    std::string witness_;
};

/// A broken internal invariant. Always a bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require_internal(bool cond, const char* what) {
    if (!cond)
        throw InternalError(what);
}

} // namespace fibgen
