#include "utl/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace utl {

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

// Outer bound for one rounding step: 2^(exp(x) - prec) >= ulp(x).
void add_rounding_ulp(mpfr_t rad, mpfr_srcptr x, int ternary, mpfr_prec_t prec) {
    if (ternary == 0) return;
    mpfr_exp_t e = mpfr_zero_p(x) ? mpfr_get_emin() + prec : mpfr_get_exp(x);
    mpfr_t ulp;
    mpfr_init2(ulp, 16);
    mpfr_set_ui_2exp(ulp, 1, e - prec, MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

struct ScopedMpfr {
    mpfr_t v;
    explicit ScopedMpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~ScopedMpfr() { mpfr_clear(v); }
    ScopedMpfr(const ScopedMpfr&) = delete;
    ScopedMpfr& operator=(const ScopedMpfr&) = delete;
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

std::string mpfr_format(mpfr_srcptr x, const char* fmt, mpfr_rnd_t rnd) {
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, rnd, x);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return "HOLDS";
        case Verdict::FAILS: return "FAILS";
        case Verdict::UNDECIDED: return "UNDECIDED";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "HOLDS") return Verdict::HOLDS;
    if (s == "FAILS") return Verdict::FAILS;
    if (s == "UNDECIDED") return Verdict::UNDECIDED;
    raise(ErrorKind::IoError, "unknown verdict '" + s + "'");
}

unsigned precision_ceiling() {
    static const unsigned ceiling = [] {
        if (const char* env = std::getenv("UNIT_TWIST_LAB_MAX_BITS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 64) return static_cast<unsigned>(v);
        }
        return kDefaultPrecisionCeiling;
    }();
    return ceiling;
}

void CertifiedReal::init(unsigned prec) {
    prec_ = std::max(prec, 8u);
    mpfr_init2(center_, static_cast<mpfr_prec_t>(prec_));
    mpfr_init2(radius_, kRadiusPrec);
    mpfr_set_zero(center_, 1);
    mpfr_set_zero(radius_, 1);
}

CertifiedReal::CertifiedReal() { init(kDefaultPrecision); }

CertifiedReal::CertifiedReal(long value, unsigned precision_bits) {
    init(std::max<unsigned>(precision_bits, 64));
    mpfr_set_si(center_, value, MPFR_RNDN); // exact at >= 64 bits
}

CertifiedReal::CertifiedReal(const CertifiedReal& other) {
    init(other.prec_);
    mpfr_set(center_, other.center_, MPFR_RNDN);
    mpfr_set(radius_, other.radius_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept {
    prec_ = other.prec_;
    mpfr_init2(center_, 8);
    mpfr_init2(radius_, 8);
    mpfr_swap(center_, other.center_);
    mpfr_swap(radius_, other.radius_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
    if (this == &other) return *this;
    mpfr_set_prec(center_, static_cast<mpfr_prec_t>(other.prec_));
    prec_ = other.prec_;
    mpfr_set(center_, other.center_, MPFR_RNDN);
    mpfr_set(radius_, other.radius_, MPFR_RNDU);
    return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
    if (this == &other) return *this;
    prec_ = other.prec_;
    mpfr_swap(center_, other.center_);
    mpfr_swap(radius_, other.radius_);
    return *this;
}

CertifiedReal::~CertifiedReal() {
    mpfr_clear(center_);
    mpfr_clear(radius_);
}

CertifiedReal CertifiedReal::exact_int(const Int& value, unsigned precision_bits) {
    unsigned need = static_cast<unsigned>(mpz_sizeinbase(value.get_mpz_t(), 2)) + 2;
    CertifiedReal r(RawTag{}, std::max(precision_bits, need));
    mpfr_set_z(r.center_, value.get_mpz_t(), MPFR_RNDN); // exact by construction
    return r;
}

CertifiedReal CertifiedReal::from_rational(const Rational& value, unsigned precision_bits) {
    CertifiedReal r(RawTag{}, precision_bits);
    int t = mpfr_set_q(r.center_, value.get_mpq_t(), MPFR_RNDN);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal CertifiedReal::exact_from_mpfr(mpfr_srcptr value) {
    CertifiedReal r(RawTag{}, static_cast<unsigned>(mpfr_get_prec(value)));
    mpfr_set(r.center_, value, MPFR_RNDN); // same precision, exact
    return r;
}

CertifiedReal CertifiedReal::from_endpoints(const CertifiedReal& lo, const CertifiedReal& hi,
                                            unsigned precision_bits) {
    CertifiedReal r(RawTag{}, precision_bits);
    ScopedMpfr l(static_cast<mpfr_prec_t>(lo.prec_) + kRadiusPrec);
    ScopedMpfr h(static_cast<mpfr_prec_t>(hi.prec_) + kRadiusPrec);
    mpfr_sub(l.v, lo.center_, lo.radius_, MPFR_RNDD);
    mpfr_add(h.v, hi.center_, hi.radius_, MPFR_RNDU);
    if (mpfr_cmp(l.v, h.v) > 0) raise(ErrorKind::DomainError, "from_endpoints: lo > hi");
    mpfr_add(r.center_, l.v, h.v, MPFR_RNDN);
    mpfr_div_2ui(r.center_, r.center_, 1, MPFR_RNDN);
    ScopedMpfr d1(kRadiusPrec), d2(kRadiusPrec);
    mpfr_sub(d1.v, h.v, r.center_, MPFR_RNDU);
    mpfr_sub(d2.v, r.center_, l.v, MPFR_RNDU);
    mpfr_max(r.radius_, d1.v, d2.v, MPFR_RNDU);
    if (mpfr_sgn(r.radius_) < 0) mpfr_set_zero(r.radius_, 1);
    return r;
}

CertifiedReal CertifiedReal::pi(unsigned precision_bits) {
    CertifiedReal r(RawTag{}, precision_bits);
    int t = mpfr_const_pi(r.center_, MPFR_RNDN);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

bool CertifiedReal::is_exact() const noexcept { return mpfr_zero_p(radius_); }
bool CertifiedReal::contains_zero() const noexcept { return mpfr_cmpabs(center_, radius_) <= 0; }
bool CertifiedReal::definitely_positive() const noexcept { return mpfr_cmp(center_, radius_) > 0; }
bool CertifiedReal::definitely_negative() const noexcept {
    return mpfr_sgn(center_) < 0 && mpfr_cmpabs(center_, radius_) > 0;
}
bool CertifiedReal::is_zero_point() const noexcept {
    return mpfr_zero_p(center_) && mpfr_zero_p(radius_);
}

CertifiedReal CertifiedReal::inf() const {
    CertifiedReal r(RawTag{}, prec_ + kRadiusPrec);
    mpfr_sub(r.center_, center_, radius_, MPFR_RNDD);
    return r;
}

CertifiedReal CertifiedReal::sup() const {
    CertifiedReal r(RawTag{}, prec_ + kRadiusPrec);
    mpfr_add(r.center_, center_, radius_, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::magnitude() const {
    CertifiedReal r(RawTag{}, prec_ + kRadiusPrec);
    mpfr_abs(r.center_, center_, MPFR_RNDN); // exact
    mpfr_add(r.center_, r.center_, radius_, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::mignitude() const {
    CertifiedReal r(RawTag{}, prec_ + kRadiusPrec);
    mpfr_abs(r.center_, center_, MPFR_RNDN);
    mpfr_sub(r.center_, r.center_, radius_, MPFR_RNDD);
    if (mpfr_sgn(r.center_) < 0) mpfr_set_zero(r.center_, 1);
    return r;
}

CertifiedReal CertifiedReal::radius() const {
    CertifiedReal r(RawTag{}, kRadiusPrec);
    mpfr_set(r.center_, radius_, MPFR_RNDU);
    return r;
}

double CertifiedReal::center_double() const { return mpfr_get_d(center_, MPFR_RNDN); }
double CertifiedReal::radius_double() const { return mpfr_get_d(radius_, MPFR_RNDU); }

CertifiedReal CertifiedReal::with_precision(unsigned precision_bits) const {
    CertifiedReal r(RawTag{}, precision_bits);
    int t = mpfr_set(r.center_, center_, MPFR_RNDN);
    mpfr_set(r.radius_, radius_, MPFR_RNDU);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(CertifiedReal::RawTag{}, std::max(a.prec_, b.prec_));
    int t = mpfr_add(r.center_, a.center_, b.center_, MPFR_RNDN);
    mpfr_add(r.radius_, a.radius_, b.radius_, MPFR_RNDU);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(CertifiedReal::RawTag{}, std::max(a.prec_, b.prec_));
    int t = mpfr_sub(r.center_, a.center_, b.center_, MPFR_RNDN);
    mpfr_add(r.radius_, a.radius_, b.radius_, MPFR_RNDU);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(CertifiedReal::RawTag{}, std::max(a.prec_, b.prec_));
    int t = mpfr_mul(r.center_, a.center_, b.center_, MPFR_RNDN);
    // |x*y - ac*bc| <= |ac|*rb + |bc|*ar + ra*rb
    ScopedMpfr am(kRadiusPrec), bm(kRadiusPrec), term(kRadiusPrec);
    mpfr_abs(am.v, a.center_, MPFR_RNDU);
    mpfr_abs(bm.v, b.center_, MPFR_RNDU);
    mpfr_mul(term.v, am.v, b.radius_, MPFR_RNDU);
    mpfr_set(r.radius_, term.v, MPFR_RNDU);
    mpfr_mul(term.v, bm.v, a.radius_, MPFR_RNDU);
    mpfr_add(r.radius_, r.radius_, term.v, MPFR_RNDU);
    mpfr_mul(term.v, a.radius_, b.radius_, MPFR_RNDU);
    mpfr_add(r.radius_, r.radius_, term.v, MPFR_RNDU);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
    if (b.is_zero_point()) raise(ErrorKind::DivisionByZero, "division by exact zero");
    ScopedMpfr mig(kRadiusPrec);
    mpfr_abs(mig.v, b.center_, MPFR_RNDD);
    mpfr_sub(mig.v, mig.v, b.radius_, MPFR_RNDD);
    if (mpfr_sgn(mig.v) <= 0)
        raise(ErrorKind::DomainError, "division by an enclosure containing zero");
    CertifiedReal r(CertifiedReal::RawTag{}, std::max(a.prec_, b.prec_));
    int t = mpfr_div(r.center_, a.center_, b.center_, MPFR_RNDN);
    // |x/y - ac/bc| <= (ra*|bc| + rb*|ac|) / (|bc| * (|bc| - rb))
    ScopedMpfr am(kRadiusPrec), bm(kRadiusPrec), num(kRadiusPrec), den(kRadiusPrec),
        term(kRadiusPrec);
    mpfr_abs(am.v, a.center_, MPFR_RNDU);
    mpfr_abs(bm.v, b.center_, MPFR_RNDU);
    mpfr_mul(num.v, a.radius_, bm.v, MPFR_RNDU);
    mpfr_mul(term.v, b.radius_, am.v, MPFR_RNDU);
    mpfr_add(num.v, num.v, term.v, MPFR_RNDU);
    mpfr_abs(den.v, b.center_, MPFR_RNDD);
    mpfr_mul(den.v, den.v, mig.v, MPFR_RNDD);
    mpfr_div(r.radius_, num.v, den.v, MPFR_RNDU);
    add_rounding_ulp(r.radius_, r.center_, t, static_cast<mpfr_prec_t>(r.prec_));
    return r;
}

CertifiedReal CertifiedReal::operator-() const {
    CertifiedReal r(*this);
    mpfr_neg(r.center_, r.center_, MPFR_RNDN); // exact
    return r;
}

CertifiedReal abs(const CertifiedReal& x) {
    CertifiedReal r(x);
    mpfr_abs(r.center_, r.center_, MPFR_RNDN); // exact
    return r;
}

namespace {

// Monotone increasing univariate functions via outward endpoint evaluation.
CertifiedReal monotone_increasing(const CertifiedReal& x,
                                  int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    unsigned prec = x.precision();
    CertifiedReal lo = x.inf(), hi = x.sup();
    ScopedMpfr l(static_cast<mpfr_prec_t>(prec) + kRadiusPrec),
        h(static_cast<mpfr_prec_t>(prec) + kRadiusPrec);
    fn(l.v, lo.center_raw(), MPFR_RNDD);
    fn(h.v, hi.center_raw(), MPFR_RNDU);
    if (!mpfr_number_p(l.v) || !mpfr_number_p(h.v))
        raise(ErrorKind::DomainError, "non-finite result in interval function");
    return CertifiedReal::from_endpoints(CertifiedReal::exact_from_mpfr(l.v),
                                         CertifiedReal::exact_from_mpfr(h.v), prec);
}

} // namespace

CertifiedReal sqrt(const CertifiedReal& x) {
    CertifiedReal hi = x.sup();
    if (mpfr_sgn(hi.center_raw()) < 0)
        raise(ErrorKind::DomainError, "sqrt of a negative enclosure");
    // Clamp the lower endpoint to 0 so enclosures grazing zero stay valid.
    CertifiedReal lo = x.inf();
    mpfr_prec_t p = static_cast<mpfr_prec_t>(x.precision()) + kRadiusPrec;
    ScopedMpfr l(p), h(p);
    if (mpfr_sgn(lo.center_raw()) <= 0)
        mpfr_set_zero(l.v, 1);
    else
        mpfr_sqrt(l.v, lo.center_raw(), MPFR_RNDD);
    mpfr_sqrt(h.v, hi.center_raw(), MPFR_RNDU);
    return CertifiedReal::from_endpoints(CertifiedReal::exact_from_mpfr(l.v),
                                         CertifiedReal::exact_from_mpfr(h.v), x.precision());
}

CertifiedReal log(const CertifiedReal& x) {
    if (!x.definitely_positive())
        raise(ErrorKind::DomainError, "log of an enclosure not certified positive");
    return monotone_increasing(x, mpfr_log);
}

CertifiedReal exp(const CertifiedReal& x) { return monotone_increasing(x, mpfr_exp); }

CertifiedReal atan(const CertifiedReal& x) { return monotone_increasing(x, mpfr_atan); }

CertifiedReal pow_int(const CertifiedReal& x, long n) {
    if (n == 0) return CertifiedReal(1, x.precision());
    if (n < 0) return CertifiedReal(1, x.precision()) / pow_int(x, -n);
    CertifiedReal acc(1, x.precision());
    CertifiedReal base = x;
    unsigned long e = static_cast<unsigned long>(n);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

CertifiedReal pow(const CertifiedReal& x, const CertifiedReal& t) { return exp(t * log(x)); }

CertifiedReal max_enclosure(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal lo_a = a.inf(), lo_b = b.inf(), hi_a = a.sup(), hi_b = b.sup();
    const CertifiedReal& lo = (mpfr_cmp(lo_a.center_raw(), lo_b.center_raw()) >= 0) ? lo_a : lo_b;
    const CertifiedReal& hi = (mpfr_cmp(hi_a.center_raw(), hi_b.center_raw()) >= 0) ? hi_a : hi_b;
    return CertifiedReal::from_endpoints(lo, hi, std::max(a.precision(), b.precision()));
}

CertifiedReal min_enclosure(const CertifiedReal& a, const CertifiedReal& b) {
    return -max_enclosure(-a, -b);
}

CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal lo_a = a.inf(), lo_b = b.inf(), hi_a = a.sup(), hi_b = b.sup();
    const CertifiedReal& lo = (mpfr_cmp(lo_a.center_raw(), lo_b.center_raw()) <= 0) ? lo_a : lo_b;
    const CertifiedReal& hi = (mpfr_cmp(hi_a.center_raw(), hi_b.center_raw()) >= 0) ? hi_a : hi_b;
    return CertifiedReal::from_endpoints(lo, hi, std::max(a.precision(), b.precision()));
}

Verdict certify_less(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal as = a.sup(), bi = b.inf();
    if (mpfr_cmp(as.center_raw(), bi.center_raw()) < 0) return Verdict::HOLDS;
    CertifiedReal ai = a.inf(), bs = b.sup();
    if (mpfr_cmp(ai.center_raw(), bs.center_raw()) >= 0) return Verdict::FAILS;
    return Verdict::UNDECIDED;
}

Verdict certify_less_equal(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal as = a.sup(), bi = b.inf();
    if (mpfr_cmp(as.center_raw(), bi.center_raw()) <= 0) return Verdict::HOLDS;
    CertifiedReal ai = a.inf(), bs = b.sup();
    if (mpfr_cmp(ai.center_raw(), bs.center_raw()) > 0) return Verdict::FAILS;
    return Verdict::UNDECIDED;
}

Verdict certify_compare(const CertifiedReal& a, const CertifiedReal& b) {
    return certify_less(a, b);
}

bool identical(const CertifiedReal& a, const CertifiedReal& b) {
    return mpfr_equal_p(a.center_, b.center_) && mpfr_equal_p(a.radius_, b.radius_);
}

std::optional<Int> CertifiedReal::unique_integer() const {
    CertifiedReal lo = inf(), hi = sup();
    Int zlo, zhi;
    mpfr_get_z(zlo.get_mpz_t(), lo.center_raw(), MPFR_RNDU);
    mpfr_get_z(zhi.get_mpz_t(), hi.center_raw(), MPFR_RNDD);
    if (zlo == zhi) return zlo;
    return std::nullopt;
}

std::optional<Int> CertifiedReal::certified_floor() const {
    CertifiedReal lo = inf(), hi = sup();
    Int flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.center_raw(), MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.center_raw(), MPFR_RNDD);
    if (flo == fhi) return flo;
    return std::nullopt;
}

bool CertifiedReal::contains_rational(const Rational& value) const {
    // Exact test |value - center| <= radius over Q.
    Rational c, r;
    mpfr_get_q(c.get_mpq_t(), center_);
    mpfr_get_q(r.get_mpq_t(), radius_);
    Rational d = value - c;
    if (d < 0) d = -d;
    return d <= r;
}

std::string CertifiedReal::to_string(int digits) const {
    std::string c = mpfr_format(center_, ("%." + std::to_string(digits) + "R*g").c_str(), MPFR_RNDN);
    if (is_exact()) return c + " ± 0";
    return c + " ± " + mpfr_format(radius_, "%.2R*e", MPFR_RNDU);
}

std::string CertifiedReal::decimal_lo(int digits) const {
    CertifiedReal lo = inf();
    return mpfr_format(lo.center_raw(), ("%." + std::to_string(digits) + "R*e").c_str(), MPFR_RNDD);
}

std::string CertifiedReal::decimal_hi(int digits) const {
    CertifiedReal hi = sup();
    return mpfr_format(hi.center_raw(), ("%." + std::to_string(digits) + "R*e").c_str(), MPFR_RNDU);
}

std::string CertifiedReal::hex_center() const { return mpfr_format(center_, "%R*a", MPFR_RNDN); }
std::string CertifiedReal::hex_radius() const { return mpfr_format(radius_, "%R*a", MPFR_RNDU); }

CertifiedReal CertifiedReal::from_hex(const std::string& center, const std::string& radius,
                                      unsigned precision_bits) {
    CertifiedReal r(RawTag{}, precision_bits);
    if (mpfr_set_str(r.center_, center.c_str(), 0, MPFR_RNDN) != 0)
        raise(ErrorKind::IoError, "bad hex float '" + center + "'");
    if (mpfr_set_str(r.radius_, radius.c_str(), 0, MPFR_RNDU) != 0)
        raise(ErrorKind::IoError, "bad hex float '" + radius + "'");
    return r;
}

// ---------------------------------------------------------------------------
// CertifiedComplex

CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
}
CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
}
CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}
CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b) {
    CertifiedReal n2 = b.norm2();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n2, (a.im_ * b.re_ - a.re_ * b.im_) / n2};
}

namespace {

// Tight square via endpoint magnitudes: x^2 in [mig^2, mag^2].
CertifiedReal square_tight(const CertifiedReal& x) {
    CertifiedReal mag = x.magnitude(), mig = x.mignitude();
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(x.precision()) + kRadiusPrec;
    ScopedMpfr lo(prec), hi(prec);
    mpfr_sqr(lo.v, mig.center_raw(), MPFR_RNDD);
    mpfr_sqr(hi.v, mag.center_raw(), MPFR_RNDU);
    return CertifiedReal::from_endpoints(CertifiedReal::exact_from_mpfr(lo.v),
                                         CertifiedReal::exact_from_mpfr(hi.v), x.precision());
}

} // namespace

CertifiedReal CertifiedComplex::norm2() const { return square_tight(re_) + square_tight(im_); }

CertifiedReal CertifiedComplex::abs() const { return sqrt(norm2()); }

CertifiedComplex CertifiedComplex::principal_log() const {
    CertifiedReal modulus = abs();
    if (!modulus.definitely_positive())
        raise(ErrorKind::DomainError, "log of an enclosure possibly containing zero");
    CertifiedReal log_mod = log(modulus);
    unsigned prec = precision();
    CertifiedReal arg;
    if (re_.definitely_positive()) {
        arg = atan(im_ / re_);
    } else if (im_.definitely_positive()) {
        CertifiedReal half_pi = CertifiedReal::pi(prec) / CertifiedReal(2, prec);
        arg = half_pi - atan(re_ / im_);
    } else if (im_.definitely_negative()) {
        CertifiedReal half_pi = CertifiedReal::pi(prec) / CertifiedReal(2, prec);
        arg = atan(re_ / (-im_)) - half_pi;
    } else {
        raise(ErrorKind::DomainError, "principal log across the branch cut");
    }
    return {log_mod, arg};
}

std::string CertifiedComplex::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ") + (" + im_.to_string(digits) + ")i";
}

// ---------------------------------------------------------------------------
// refine

CertifiedReal refine(const RealProducer& producer, const CertifiedReal& target_radius,
                     unsigned max_bits) {
    std::optional<CertifiedReal> best;
    std::optional<Error> last_error;
    CertifiedReal target_hi = target_radius.sup();
    unsigned prec = 64;
    for (;;) {
        if (prec > max_bits) prec = max_bits;
        try {
            CertifiedReal v = producer(prec);
            if (!best || mpfr_cmp(v.radius_raw(), best->radius_raw()) < 0) best = v;
            if (mpfr_cmp(best->radius_raw(), target_hi.center_raw()) <= 0) return *best;
        } catch (const Error& e) {
            switch (e.kind()) {
                case ErrorKind::DomainError:
                case ErrorKind::DivisionByZero:
                case ErrorKind::PrecisionExhausted:
                    last_error = e;
                    break;
                default:
                    throw;
            }
        }
        if (prec >= max_bits) break;
        prec *= 2;
    }
    if (best) return *best;
    if (last_error) throw *last_error;
    raise(ErrorKind::PrecisionExhausted, "refine produced no enclosure");
}

CertifiedReal refine_to_exp(const RealProducer& producer, long radius_exp2, unsigned max_bits) {
    ScopedMpfr t(64);
    mpfr_set_ui_2exp(t.v, 1, radius_exp2, MPFR_RNDU);
    return refine(producer, CertifiedReal::exact_from_mpfr(t.v), max_bits);
}

} // namespace utl
