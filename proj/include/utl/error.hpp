#pragma once

#include <stdexcept>
#include <string>

namespace utl {

enum class ErrorKind {
    LeadingZero,
    ReduciblePolynomial,
    NotSquarefree,
    PrecisionExhausted,
    DivisionByZero,
    FieldMismatch,
    DegenerateElement,
    ZeroElement,
    NotAUnit,
    TorsionCheckFailed,
    SingularSystem,
    DependentUnits,
    RationalTarget,
    ExactEquality,
    ZeroP,
    ConstraintViolation,
    DomainError,          // log/exp/div on an enclosure straddling a branch or domain boundary
    CertifiedViolation,   // a certified FAILS on an inequality the theory guarantees
    UsageError,
    IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace utl
