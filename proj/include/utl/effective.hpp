#pragma once

#include <optional>
#include <string>
#include <vector>

#include "utl/field.hpp"
#include "utl/units.hpp"

namespace utl {

struct PrincipalLogResult {
    bool skipped = false;          // trivial branch: |gamma - 1| >= 1/2 certified
    CertifiedReal trivial_bound;   // |p| / (2q), set when skipped
    CertifiedComplex lambda0;      // principal log of gamma = eps*alpha*q/p
    CertifiedReal gamma_minus_one; // |gamma - 1|
    Verdict lambda_inequality = Verdict::UNDECIDED; // 0 < |l0| < 2|gamma - 1|
};

// Reduction of |eps*alpha - p/q| to a linear form in logarithms; ZeroP when
// p = 0 (report the direct gap instead), ExactEquality when gamma = 1.
PrincipalLogResult principal_log_setup(const FieldElement& alpha, const FieldElement& eps,
                                       const Int& p, const Int& q, unsigned precision_bits);

struct BakerInput {
    std::vector<CertifiedComplex> lambdas; // m logarithm enclosures
    std::vector<Int> coefficients;         // b_1..b_m, not all zero
    std::vector<CertifiedReal> log_As;     // log A_j >= max{h(alpha_j), |lambda_j|, 1}
    std::vector<CertifiedReal> heights;    // h(alpha_j), used to certify the constraint
    CertifiedReal B;                       // >= max{|b_j|, e}
    CertifiedReal kappa4;
    unsigned degree_bound = 1;             // D, recorded but not used in arithmetic
};

// exp(-kappa4 (log B) (log A_1) ... (log A_m)); ConstraintViolation when a
// certified log A_j or B constraint fails. Conditional on the configured kappa4.
CertifiedReal baker_bound(const BakerInput& input);

struct EffectiveConfig {
    Rational kappa3 = Rational(100);
    std::optional<Rational> kappa4;  // default: 10^10 * m * D, flagged non-theorem-grade
    Rational kappa5 = Rational(100);
    Rational kappa6 = Rational(10);
    bool kappa4_user_supplied = false;
};

struct EffectiveGapReport {
    bool skipped = false;            // trivial branch
    bool zero_p = false;             // p = 0: direct gap |eps*alpha| reported
    CertifiedReal gap_lower_bound;   // the assembled lower bound for |eps*alpha - p/q|
    CertifiedReal direct_gap;        // certified |eps*alpha - p/q|
    Verdict sanity;                  // claim: gap_lower_bound <= direct_gap
    // non-SKIP intermediates
    CertifiedComplex lambda0;
    std::vector<Int> exponents;
    CertifiedReal A_last;            // A_{r+1} = kappa5 max{|p|, q, 2}
    CertifiedReal B;                 // kappa6 log(house(eps) + 1)
    CertifiedReal baker_rhs;         // exp{-kappa4 (log B) prod log A_j}
    CertifiedReal kappa7;            // implied kappa7 with bound = exp{-k7 logB logmax}
    CertifiedReal bound_thm_effectif; // (log(house+2))^(-kappa3 log max{|p|,q,2})
    Verdict lambda_inequality = Verdict::UNDECIDED;
    std::string kappa4_source;       // "default" or "user"
    Rational kappa4_value;
};

EffectiveGapReport effective_gap(const FieldElement& alpha, const FieldElement& eps,
                                 const UnitBasis& basis, const Int& p, const Int& q,
                                 const EffectiveConfig& config, unsigned precision_bits);

} // namespace utl
