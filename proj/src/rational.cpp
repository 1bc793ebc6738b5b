#include "utl/rational.hpp"

#include "utl/error.hpp"

namespace utl {

Int floor_rational(const Rational& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        raise(ErrorKind::IoError, "bad rational '" + text + "'");
    r.canonicalize();
    if (mpz_sgn(r.get_den().get_mpz_t()) == 0)
        raise(ErrorKind::IoError, "zero denominator in '" + text + "'");
    return r;
}

std::string int_to_string(const Int& n) { return n.get_str(); }

Int int_from_string(const std::string& text) {
    Int n;
    if (n.set_str(text, 10) != 0)
        raise(ErrorKind::IoError, "bad integer '" + text + "'");
    return n;
}

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(rational_to_string(v));
    return out;
}

std::vector<Rational> rationals_from_strings(const std::vector<std::string>& texts) {
    std::vector<Rational> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(rational_from_string(t));
    return out;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::LeadingZero: return "LeadingZero";
        case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DegenerateElement: return "DegenerateElement";
        case ErrorKind::ZeroElement: return "ZeroElement";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::TorsionCheckFailed: return "TorsionCheckFailed";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::DependentUnits: return "DependentUnits";
        case ErrorKind::RationalTarget: return "RationalTarget";
        case ErrorKind::ExactEquality: return "ExactEquality";
        case ErrorKind::ZeroP: return "ZeroP";
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::CertifiedViolation: return "CertifiedViolation";
        case ErrorKind::UsageError: return "UsageError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

} // namespace utl
