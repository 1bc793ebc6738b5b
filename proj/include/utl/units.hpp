#pragma once

#include <string>
#include <vector>

#include "utl/field.hpp"

namespace utl {

// Membership in Z_K^x: algebraic integer of norm +-1, both tested exactly.
bool is_unit(const FieldElement& x);

// lambda(x) = (log|sigma_j(x)|) over the r1 + r2 embedding rows.
// Escalates precision internally until each log is certified; ZeroElement on 0.
std::vector<CertifiedReal> log_embedding(const FieldElement& x, unsigned precision_bits);

struct ExponentVector {
    std::vector<Int> exponents;
    bool torsion_ok = false;
    Rational torsion_rational; // the residual when rational (+1 or -1 in real fields)
    std::string torsion_text;
};

// Multiplicatively independent units spanning (a finite-index subgroup of)
// the torsion-free part; the r x r row subset with the largest certified
// determinant is fixed at construction.
class UnitBasis {
public:
    UnitBasis(FieldPtr field, std::vector<FieldElement> units,
              unsigned precision_bits = kDefaultPrecision);

    const FieldPtr& field() const { return field_; }
    unsigned rank() const { return static_cast<unsigned>(units_.size()); }
    const std::vector<FieldElement>& units() const { return units_; }
    const std::vector<unsigned>& selected_rows() const { return rows_; }

    // Rows of log|sigma_j(eps_i)| for the selected subset, at the given precision.
    std::vector<std::vector<CertifiedReal>> selected_matrix(unsigned precision_bits) const;

private:
    FieldPtr field_;
    std::vector<FieldElement> units_;
    std::vector<unsigned> rows_;
};

// Exact exponents of a unit over the basis: interval Cramer solve, integer
// rounding, then exact verification that the residual is a root of unity.
ExponentVector recover_exponents(const FieldElement& x, const UnitBasis& basis,
                                 unsigned precision_bits = kDefaultPrecision);

// Certified constant with max|b_i| <= kappa8 * log house(eps) for every unit:
// row-bound factor times the infinity norm of the inverse selected log matrix.
CertifiedReal kappa8(const UnitBasis& basis, unsigned precision_bits = kDefaultPrecision);

struct CubicFamily {
    FieldPtr field;      // X^3 - (D^3 - 1)
    FieldElement eps0;   // D^2 + D w + w^2 = 1/(D - w)
};
CubicFamily cubic_family(long D);

struct BiquadraticFamily {
    FieldPtr field;      // X^4 - (D^4 - 1)
    FieldElement eps1;   // D^2 + w^2 = 1/(D^2 - w^2)
    FieldElement eps2;   // D^3 + D^2 w + D w^2 + w^3 = 1/(D - w)
};
BiquadraticFamily biquadratic_family(long D);

struct BoundedUnitTerm {
    Int a, b;                 // eps_n = eps1^a * eps2^(-b), a/b a convergent
    FieldElement value;
    CertifiedReal log_value;  // enclosure of log eps_n
    bool accepted = false;
};

struct BoundedUnitSequence {
    std::vector<BoundedUnitTerm> accepted;
    std::vector<BoundedUnitTerm> skipped; // outside [1/2, 2], kept for the log
};

// Convergents a/b of (log eps2)/(log eps1) filtered by the certified window
// 1/2 <= eps_n <= 2; runs until `count` terms are accepted.
BoundedUnitSequence bounded_unit_sequence(const FieldElement& eps1, const FieldElement& eps2,
                                          unsigned count,
                                          unsigned precision_bits = kDefaultPrecision);

} // namespace utl
