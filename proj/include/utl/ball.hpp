#pragma once

#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "utl/error.hpp"
#include "utl/rational.hpp"

namespace utl {

// Three-valued outcome of a certified comparison. HOLDS/FAILS are emitted only
// when the claim is true/false for every point of both enclosures.
enum class Verdict { HOLDS, FAILS, UNDECIDED };

const char* verdict_name(Verdict v);
Verdict verdict_from_string(const std::string& s);

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kDefaultPrecisionCeiling = 4096;

// Ceiling for adaptive refinement; UNIT_TWIST_LAB_MAX_BITS overrides the default.
unsigned precision_ceiling();

// Arbitrary-precision ball: the represented real lies in [center-radius, center+radius].
// All operations round the center to `precision_bits` and push every rounding
// error into the radius (outward), so enclosures are unconditionally valid.
class CertifiedReal {
public:
    CertifiedReal();
    explicit CertifiedReal(long value, unsigned precision_bits = kDefaultPrecision);
    CertifiedReal(const CertifiedReal& other);
    CertifiedReal(CertifiedReal&& other) noexcept;
    CertifiedReal& operator=(const CertifiedReal& other);
    CertifiedReal& operator=(CertifiedReal&& other) noexcept;
    ~CertifiedReal();

    static CertifiedReal exact_int(const Int& value, unsigned precision_bits = kDefaultPrecision);
    static CertifiedReal from_rational(const Rational& value, unsigned precision_bits = kDefaultPrecision);
    // Exact ball (radius 0) copying the given mpfr value at its own precision.
    static CertifiedReal exact_from_mpfr(mpfr_srcptr value);
    // Enclosure [lo, hi] given as exact dyadic endpoints.
    static CertifiedReal from_endpoints(const CertifiedReal& lo, const CertifiedReal& hi,
                                        unsigned precision_bits);
    static CertifiedReal pi(unsigned precision_bits);

    unsigned precision() const noexcept { return prec_; }
    bool is_exact() const noexcept;               // radius == 0
    bool contains_zero() const noexcept;
    bool definitely_positive() const noexcept;    // inf > 0
    bool definitely_negative() const noexcept;
    bool is_zero_point() const noexcept;          // center == 0 and radius == 0

    CertifiedReal inf() const;                    // exact dyadic lower endpoint
    CertifiedReal sup() const;                    // exact dyadic upper endpoint
    CertifiedReal magnitude() const;              // exact upper bound of |x|
    CertifiedReal mignitude() const;              // exact lower bound of |x| (0 if straddling)
    CertifiedReal radius() const;                 // exact, as a ball of radius 0
    double center_double() const;
    double radius_double() const;

    CertifiedReal with_precision(unsigned precision_bits) const;

    friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
    CertifiedReal operator-() const;

    friend CertifiedReal abs(const CertifiedReal& x);
    friend CertifiedReal sqrt(const CertifiedReal& x);   // DomainError if sup < 0; clamps inf to 0
    friend CertifiedReal log(const CertifiedReal& x);    // DomainError unless inf > 0
    friend CertifiedReal exp(const CertifiedReal& x);
    friend CertifiedReal atan(const CertifiedReal& x);
    friend CertifiedReal pow_int(const CertifiedReal& x, long n);
    friend CertifiedReal pow(const CertifiedReal& x, const CertifiedReal& t); // x > 0 certified
    friend CertifiedReal max_enclosure(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal min_enclosure(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);

    // Claim "a < b" (or "a <= b"): HOLDS/FAILS only when certain for all points.
    friend Verdict certify_less(const CertifiedReal& a, const CertifiedReal& b);
    friend Verdict certify_less_equal(const CertifiedReal& a, const CertifiedReal& b);

    // True iff the two balls describe identical center/radius values.
    friend bool identical(const CertifiedReal& a, const CertifiedReal& b);

    // Exactly one integer inside [inf, sup] -> that integer.
    std::optional<Int> unique_integer() const;
    // floor(x) certified (same floor at both endpoints).
    std::optional<Int> certified_floor() const;
    bool contains_rational(const Rational& value) const;

    std::string to_string(int digits = 17) const;             // "c ± r"
    std::string decimal_lo(int digits = 17) const;            // outward (RNDD)
    std::string decimal_hi(int digits = 17) const;            // outward (RNDU)
    std::string hex_center() const;                           // exact round-trip form
    std::string hex_radius() const;
    static CertifiedReal from_hex(const std::string& center, const std::string& radius,
                                  unsigned precision_bits);

    mpfr_srcptr center_raw() const noexcept { return center_; }
    mpfr_srcptr radius_raw() const noexcept { return radius_; }

private:
    friend class CertifiedComplex;
    struct RawTag {};
    CertifiedReal(RawTag, unsigned prec) { init(prec); }
    void init(unsigned prec);

    mpfr_t center_;
    mpfr_t radius_;
    unsigned prec_;
};

Verdict certify_compare(const CertifiedReal& a, const CertifiedReal& b); // claim a < b

// Rectangular complex enclosure (component-wise balls).
class CertifiedComplex {
public:
    CertifiedComplex() = default;
    CertifiedComplex(CertifiedReal re, CertifiedReal im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit CertifiedComplex(const CertifiedReal& re) : re_(re), im_(long(0), re.precision()) {}

    const CertifiedReal& re() const noexcept { return re_; }
    const CertifiedReal& im() const noexcept { return im_; }
    unsigned precision() const noexcept { return std::max(re_.precision(), im_.precision()); }

    CertifiedComplex conj() const { return {re_, -im_}; }
    bool is_exact() const { return re_.is_exact() && im_.is_exact(); }

    friend CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b);
    friend CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b);
    friend CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b);
    friend CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b);
    CertifiedComplex operator-() const { return {-re_, -im_}; }

    CertifiedReal abs() const;            // |z| as a real enclosure
    CertifiedReal norm2() const;          // re^2 + im^2
    // Principal logarithm; DomainError when the box cannot be certified away
    // from the branch cut (-inf, 0].
    CertifiedComplex principal_log() const;

    std::string to_string(int digits = 17) const;

private:
    CertifiedReal re_;
    CertifiedReal im_;
};

// Re-evaluates the same mathematical quantity at any requested precision.
using RealProducer = std::function<CertifiedReal(unsigned precision_bits)>;

// Doubles working precision from 64 bits until the enclosure radius is at most
// target_radius or max_bits is reached; returns the tightest enclosure seen.
// Degradation is signaled via the radius, never via an invalid enclosure.
CertifiedReal refine(const RealProducer& producer, const CertifiedReal& target_radius,
                     unsigned max_bits = kDefaultPrecisionCeiling);
CertifiedReal refine_to_exp(const RealProducer& producer, long radius_exp2,
                            unsigned max_bits = kDefaultPrecisionCeiling);

} // namespace utl
