#pragma once

#include <optional>
#include <string>
#include <vector>

#include "utl/field.hpp"

namespace utl {

// ---------------------------------------------------------------------------
// Continued fractions

// A real number that can be re-evaluated at any precision; `exact` short-cuts
// the certified digit extraction when the value is known rational.
struct RealTarget {
    RealProducer producer;
    std::optional<Rational> exact;
};

RealTarget real_target(const FieldElement& x); // identity embedding value
RealTarget real_target(const Rational& x);

struct ContinuedFraction {
    std::vector<Int> partial_quotients;
    std::vector<Rational> convergents; // p_k / q_k, exact
    bool rational_termination = false;
};

// First `count` certified partial quotients (fewer when the expansion
// terminates); refines the producer on demand up to max_bits.
ContinuedFraction continued_fraction(const RealTarget& x, unsigned count,
                                     unsigned max_bits = 0 /* 0 = precision_ceiling() */);

// Distance to the nearest integer; requires enclosure width < 1/2.
// Output is always contained in [0, 1/2].
CertifiedReal nearest_int_distance(const CertifiedReal& x);

// ---------------------------------------------------------------------------
// Records

// Unit with its descriptor for reports (e.g. exponents {3} for eps0^3).
struct UnitSpec {
    FieldElement value;
    std::vector<long> exponents;
    std::string label;
};

UnitSpec unit_power(const FieldElement& base, long n); // label = to_string(n)

struct ApproxRecord {
    std::string unit_label;
    std::vector<long> unit_exponents;
    Int p;
    Int q;
    CertifiedReal lhs;      // |eps*alpha - p/q|
    CertifiedReal rhs;      // the bound under test
    CertifiedReal quality;  // q^d * house(eps)^(d-1) * |eps*alpha - p/q|
    Verdict verdict = Verdict::UNDECIDED;
    bool is_minimum = false; // per-unit minimal quality row
};

// kappa_1 = 1 / (a0 * (2 house(alpha) + 1)^(d-1)); alpha must have full degree.
CertifiedReal liouville_kappa1(const FieldElement& alpha, unsigned precision_bits);

// Certified verdict of |eps*alpha - p/q| >= kappa_1 / (q^d house(eps)^(d-1)),
// the unit-uniform formulation; ExactEquality when eps*alpha = p/q.
ApproxRecord liouville_check(const FieldElement& alpha, const UnitSpec& eps, const Int& p,
                             const Int& q, unsigned precision_bits);

// |q*gamma - p| >= 1 / ((|p|+q)^(delta-1) e^(delta h(gamma))), delta = deg(gamma).
ApproxRecord general_liouville(const FieldElement& gamma, const Int& p, const Int& q,
                               unsigned precision_bits);

CertifiedReal quality(const FieldElement& alpha, const FieldElement& eps, const Int& p,
                      const Int& q, unsigned precision_bits);

// ---------------------------------------------------------------------------
// Searches

struct SearchOptions {
    Int q_max;
    Rational kappa;
    unsigned precision_bits = kDefaultPrecision;
    bool exhaustive_q = false; // oracle mode: every q up to q_max
};

// Convergent walk per unit; emits certified hits (quality < kappa) plus the
// per-unit minimum-quality record. A certified Liouville FAILS on any walked
// record raises CertifiedViolation: that outcome falsifies the implementation.
std::vector<ApproxRecord> search_best(const FieldElement& alpha,
                                      const std::vector<UnitSpec>& units,
                                      const SearchOptions& opts);

// Liouville verdict for every convergent of eps*alpha with q <= q_max;
// the records' rhs is the Liouville floor itself.
std::vector<ApproxRecord> liouville_scan(const FieldElement& alpha,
                                         const std::vector<UnitSpec>& units, const Int& q_max,
                                         unsigned precision_bits);

struct HurwitzRecord {
    Int p, q;
    CertifiedReal lhs; // |eps0^n alpha - p/q|
    CertifiedReal rhs; // 1 / (sqrt(5) q^2)
    Verdict verdict;   // claim lhs <= rhs
    bool witness = false;
};

// First `num_convergents` convergents of eps0^n * alpha with the Hurwitz
// verdict on each; field must be real quadratic, eps0 > 1 certified.
// RationalTarget when eps0^n * alpha is rational (the excepted n).
std::vector<HurwitzRecord> hurwitz_scan(const FieldElement& alpha, const FieldElement& eps0,
                                        long n, unsigned num_convergents,
                                        unsigned precision_bits);

// First `count` certified witnesses of the Hurwitz inequality.
std::vector<HurwitzRecord> hurwitz_witnesses(const FieldElement& alpha,
                                             const FieldElement& eps0, long n, unsigned count,
                                             unsigned precision_bits);

// ---------------------------------------------------------------------------
// Pseudo-Pisot and the Corvaja-Zannier comparison

struct PisotCertificate {
    bool is_pseudo_pisot = false;
    int degree = 0;            // [Q(x) : Q]
    Rational trace;            // Tr_{Q(x)/Q}(x), exact
    bool trace_integral = false;
    bool identity_modulus_gt_one = false;
    bool others_modulus_lt_one = false;
};

PisotCertificate pseudo_pisot(const FieldElement& x, unsigned precision_bits);

struct CzRecord {
    Int q;
    long delta = 1;            // [Q(eps) : Q]
    bool exact_integer = false; // alpha*q*eps in Z exactly (excluded by "0 <")
    bool abs_gt_one = false;
    bool pisot = false;
    bool applies = false;      // hypotheses of the finiteness statement pass
    CertifiedReal lhs;         // || alpha q eps ||
    CertifiedReal rhs;         // 1 / (house(eps)^eta q^(d+eta))
    Verdict verdict = Verdict::UNDECIDED; // claim lhs >= rhs, asserted when applies
};

CzRecord cz_check(const FieldElement& alpha, const Int& q, const FieldElement& eps,
                  const Rational& eta, unsigned precision_bits);

} // namespace utl
