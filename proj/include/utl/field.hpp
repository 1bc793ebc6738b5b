#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "utl/ball.hpp"
#include "utl/poly.hpp"
#include "utl/rational.hpp"
#include "utl/roots.hpp"

namespace utl {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct FieldOptions {
    bool attest_irreducible = false;
    std::optional<unsigned> identity_embedding; // override, index into embeddings()
};

// Q(alpha) for an integer polynomial a0 X^d + ... + ad, a0 > 0, validated
// squarefree and irreducible (exact screens up to degree 4, attestation above).
// Immutable; embedding enclosures are memoized per precision behind a mutex.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr create(const std::vector<Int>& descending_coeffs, FieldOptions opts = {});

    int degree() const { return poly_.degree(); }
    const IntPoly& polynomial() const { return poly_; }
    std::vector<Int> coefficients_descending() const { return poly_.to_descending(); }
    const Int& leading_coefficient() const { return poly_.leading(); }
    unsigned real_embeddings() const { return r1_; }
    unsigned complex_pairs() const { return r2_; }
    unsigned unit_rank() const { return r1_ + r2_ - 1; }
    unsigned identity_index() const { return identity_; }
    bool identity_is_real() const { return identity_ < r1_; }
    // Root of unity orders in this field divide lcm{m : phi(m) | d}.
    Int torsion_exponent_bound() const;

    // Layout: r1 real roots ascending, r2 upper-half-plane representatives,
    // then their conjugates in matching order.
    std::vector<CertifiedComplex> embeddings(unsigned precision_bits) const;
    CertifiedComplex embedding(unsigned index, unsigned precision_bits) const;
    unsigned log_row_weight(unsigned row) const { return row < r1_ ? 1 : 2; }

    bool same_field(const NumberField& other) const { return poly_ == other.poly_; }
    std::string describe() const;

private:
    NumberField(IntPoly poly, unsigned r1, unsigned r2, unsigned identity)
        : poly_(std::move(poly)), r1_(r1), r2_(r2), identity_(identity) {}

    IntPoly poly_;
    unsigned r1_;
    unsigned r2_;
    unsigned identity_;
    mutable std::mutex cache_mutex_;
    mutable std::optional<IsolatedRoots> cache_;
};

// Element of Q(alpha) in the power basis, exact rational coordinates.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rational> coords);

    static FieldElement zero(FieldPtr field);
    static FieldElement one(FieldPtr field);
    static FieldElement generator(FieldPtr field);
    static FieldElement from_rational(FieldPtr field, const Rational& value);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_rational() const;           // all coordinates above degree 0 vanish
    Rational rational_value() const;    // requires is_rational()

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    FieldElement inverse() const;       // DivisionByZero on 0
    FieldElement pow(long n) const;     // exact, negative via inverse
    FieldElement scale(const Rational& c) const;
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    Rational trace() const;             // over K/Q
    Rational norm() const;              // over K/Q
    RatPoly charpoly_monic() const;     // degree d, char poly of the mult matrix
    // Primitive integer polynomial proportional to prod_sigma (X - sigma(x));
    // DegenerateElement unless x has full degree d.
    IntPoly charpoly_scaled() const;
    RatPoly minpoly_monic() const;
    IntPoly minpoly_int() const;        // primitive, positive leading coefficient
    int element_degree() const;
    bool is_algebraic_integer() const;
    // Trace over Q(x)/Q, exact (minpoly coefficient ratio).
    Rational subfield_trace() const;

    CertifiedComplex embed(unsigned index, unsigned precision_bits) const;
    CertifiedComplex identity_value(unsigned precision_bits) const;
    // Identity-embedding value as a real enclosure; DomainError when the
    // identity embedding is complex.
    CertifiedReal identity_real(unsigned precision_bits) const;
    RealProducer identity_real_producer() const;

    // max over embeddings of |sigma(x)|; house(0) = 0 by convention.
    CertifiedReal house(unsigned precision_bits) const;
    // Normalized absolute logarithmic height; h(0) = 0 by convention.
    CertifiedReal height(unsigned precision_bits) const;
    // deg(x) * height(x) = log Mahler measure of the minimal polynomial.
    CertifiedReal log_mahler(unsigned precision_bits) const;

    std::string to_string() const;

private:
    void check_same_field(const FieldElement& other) const;
    std::vector<std::vector<Rational>> multiplication_matrix() const;

    FieldPtr field_;
    std::vector<Rational> coords_;
};

} // namespace utl
