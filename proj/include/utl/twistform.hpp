#pragma once

#include <string>
#include <vector>

#include "utl/approx.hpp"
#include "utl/field.hpp"

namespace utl {

// Integer binary form F_eps(X,Y) = c0 X^d + c1 X^(d-1) Y + ... + cd Y^d whose
// dehomogenization has eps*alpha as a root (exact charpoly construction).
struct TwistedForm {
    FieldPtr field;
    FieldElement twisted;       // eps * alpha
    std::string unit_label;
    std::vector<Int> coeffs;    // descending in X

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// DegenerateElement unless eps*alpha has full degree d.
TwistedForm twist_form(const FieldElement& alpha, const UnitSpec& eps);

Int eval_form(const std::vector<Int>& coeffs_desc, const Int& x, const Int& y);
Int eval_form(const TwistedForm& form, const Int& x, const Int& y);

// Certified right-hand side of |F_eps(p,q)| = a0 q^d prod_sigma |sigma(eps alpha) - p/q|,
// refined until the radius is at most 2^radius_exp2.
CertifiedReal fpq_product(const TwistedForm& form, const Int& p, const Int& q,
                          long radius_exp2 = -21);

struct IntegralityResult {
    Verdict verdict;       // |F(p,q)| >= 1
    Int value;             // exact F(p,q)
    bool exact_root;       // F(p,q) = 0, diagnosing eps*alpha = p/q
};
IntegralityResult nonzero_integrality_check(const TwistedForm& form, const Int& p, const Int& q);

struct ThueSolution {
    Int x, y;
    bool xy_zero;
};

// All |x|,|y| <= box with F(x,y) = k, exact integer arithmetic: per y the
// polynomial in x is bracketed into monotone integer segments (critical cells
// come from a recursive derivative scan) and bisected.
std::vector<ThueSolution> enum_solutions(const std::vector<Int>& coeffs_desc, const Int& k,
                                         long box);
std::vector<ThueSolution> enum_solutions(const TwistedForm& form, const Int& k, long box);

struct FamilyEnumCell {
    std::string unit_label;
    Int k;
    std::vector<ThueSolution> solutions;
    std::string error; // per-cell failures (e.g. k = 0) are surfaced, not fatal
};

std::vector<FamilyEnumCell> family_enum(const FieldElement& alpha,
                                        const std::vector<UnitSpec>& units,
                                        const std::vector<Int>& ks, long box);

} // namespace utl
