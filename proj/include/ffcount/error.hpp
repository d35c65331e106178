#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffcount {

enum class ErrorKind {
    NotPrime,
    DegreeOutOfRange,
    FieldTooLarge,
    MalformedElement,
    DivisionByZero,
    NegativeExponent,
    EvenCharacteristicUndefined,
    ZeroArgument,
    NotAGenerator,
    InvalidEquation,
    NotQuasiHomogeneous,
    InternalConsistency,
    HypothesisNotChecked,
    HypothesisFailed,
    DivisibilityViolation,
    WorkCapExceeded,
    NoApplicableFormula,
    NotCoprime,
    ExponentNotIntegral,
    PreconditionViolated,
    NotABijection,
    IdentityViolated,
    Parse,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorKind::FieldTooLarge: return "FieldTooLarge";
        case ErrorKind::MalformedElement: return "MalformedElement";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::EvenCharacteristicUndefined: return "EvenCharacteristicUndefined";
        case ErrorKind::ZeroArgument: return "ZeroArgument";
        case ErrorKind::NotAGenerator: return "NotAGenerator";
        case ErrorKind::InvalidEquation: return "InvalidEquation";
        case ErrorKind::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
        case ErrorKind::HypothesisNotChecked: return "HypothesisNotChecked";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::DivisibilityViolation: return "DivisibilityViolation";
        case ErrorKind::WorkCapExceeded: return "WorkCapExceeded";
        case ErrorKind::NoApplicableFormula: return "NoApplicableFormula";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::ExponentNotIntegral: return "ExponentNotIntegral";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::NotABijection: return "NotABijection";
        case ErrorKind::IdentityViolated: return "IdentityViolated";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so front ends can map
/// it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ffcount
