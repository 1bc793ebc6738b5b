#include "utl/field.hpp"

#include <algorithm>
#include <sstream>

#include "utl/error.hpp"

namespace utl {

namespace {

// Reduce a power-basis coordinate vector of length >= d modulo the defining
// polynomial (ascending coefficients, possibly non-monic).
void reduce_mod_field(std::vector<Rational>& c, const IntPoly& f) {
    const size_t d = static_cast<size_t>(f.degree());
    const Rational lead(f.coeffs[d]);
    while (c.size() > d) {
        Rational top = c.back();
        c.pop_back();
        if (top == 0) continue;
        Rational factor = top / lead;
        const size_t base = c.size() - d;
        for (size_t i = 0; i < d; ++i) c[base + i] -= factor * Rational(f.coeffs[i]);
    }
    c.resize(d, Rational(0));
}

RatPoly element_poly(const std::vector<Rational>& coords) {
    return RatPoly(std::vector<Rational>(coords));
}

} // namespace

FieldPtr NumberField::create(const std::vector<Int>& descending_coeffs, FieldOptions opts) {
    if (descending_coeffs.size() < 2)
        raise(ErrorKind::UsageError, "field polynomial needs degree >= 1");
    if (descending_coeffs.front() <= 0)
        raise(ErrorKind::LeadingZero, "leading coefficient a0 must be positive");
    IntPoly poly = IntPoly::from_descending(descending_coeffs);
    if (poly.degree() + 1 != static_cast<int>(descending_coeffs.size()))
        raise(ErrorKind::LeadingZero, "leading coefficient a0 must be nonzero");
    poly = poly.primitive_part();

    const int d = poly.degree();
    RatPoly fq = RatPoly::from_int(poly);
    if (poly_gcd(fq, fq.derivative()).degree() > 0)
        raise(ErrorKind::NotSquarefree, "defining polynomial has a repeated factor");
    if (d >= 2 && !rational_roots(poly).empty())
        raise(ErrorKind::ReduciblePolynomial, "defining polynomial has a rational root");
    if (d <= 4) {
        if (has_small_factor(poly))
            raise(ErrorKind::ReduciblePolynomial, "defining polynomial factors over Z");
    } else {
        if (has_small_factor(poly))
            raise(ErrorKind::ReduciblePolynomial, "defining polynomial factors over Z");
        if (!opts.attest_irreducible)
            raise(ErrorKind::ReduciblePolynomial,
                  "degree > 4 requires attest_irreducible (full factorization is out of scope)");
    }

    IsolatedRoots roots = isolate_roots(poly, kDefaultPrecision);
    unsigned r1 = roots.real_count, r2 = roots.complex_pairs;

    unsigned identity;
    if (opts.identity_embedding) {
        identity = *opts.identity_embedding;
        if (identity >= static_cast<unsigned>(d))
            raise(ErrorKind::UsageError, "identity embedding index out of range");
    } else if (r1 > 0) {
        identity = r1 - 1; // reals are sorted ascending, take the largest
    } else {
        // Largest modulus among the upper-half-plane representatives, falling
        // back to the larger real part when moduli cannot be separated.
        identity = 0;
        for (unsigned j = 1; j < r2; ++j) {
            const CertifiedComplex& best = roots.roots[identity];
            const CertifiedComplex& cand = roots.roots[j];
            Verdict v = certify_less(best.abs(), cand.abs());
            if (v == Verdict::HOLDS) {
                identity = j;
            } else if (v == Verdict::UNDECIDED) {
                if (certify_less(best.re(), cand.re()) == Verdict::HOLDS) identity = j;
            }
        }
    }

    auto field = FieldPtr(new NumberField(std::move(poly), r1, r2, identity));
    {
        std::lock_guard<std::mutex> lock(field->cache_mutex_);
        field->cache_ = std::move(roots);
    }
    return field;
}

Int NumberField::torsion_exponent_bound() const {
    // lcm of all m with phi(m) | d; phi(m) <= d bounds m <= 2 d^2 + 2.
    const long d = degree();
    Int lcm = 1;
    for (long m = 1; m <= 2 * d * d + 2; ++m) {
        long phi = 0;
        for (long k = 1; k <= m; ++k) {
            long a = k, b = m;
            while (b) {
                long t = a % b;
                a = b;
                b = t;
            }
            if (a == 1) ++phi;
        }
        if (d % phi == 0) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(m));
    }
    return lcm;
}

std::vector<CertifiedComplex> NumberField::embeddings(unsigned precision_bits) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!cache_ || cache_->precision < precision_bits)
        cache_ = isolate_roots(poly_, precision_bits, std::max(precision_ceiling(), precision_bits));
    return cache_->roots;
}

CertifiedComplex NumberField::embedding(unsigned index, unsigned precision_bits) const {
    auto roots = embeddings(precision_bits);
    if (index >= roots.size()) raise(ErrorKind::UsageError, "embedding index out of range");
    return roots[index];
}

std::string NumberField::describe() const {
    std::ostringstream os;
    bool first = true;
    auto desc = poly_.to_descending();
    int d = poly_.degree();
    for (int i = 0; i <= d; ++i) {
        const Int& c = desc[static_cast<size_t>(i)];
        if (c == 0) continue;
        int power = d - i;
        Int a = c;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        mpz_abs(a.get_mpz_t(), a.get_mpz_t());
        bool show_coeff = (a != 1) || power == 0;
        if (show_coeff) os << a.get_str();
        if (power > 0) {
            if (show_coeff) os << "*";
            os << "X";
            if (power > 1) os << "^" << power;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    const size_t d = static_cast<size_t>(field_->degree());
    if (coords_.size() > d) reduce_mod_field(coords_, field_->polynomial());
    coords_.resize(d, Rational(0));
    for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::zero(FieldPtr field) { return {std::move(field), {}}; }

FieldElement FieldElement::one(FieldPtr field) {
    return {std::move(field), {Rational(1)}};
}

FieldElement FieldElement::generator(FieldPtr field) {
    if (field->degree() < 2)
        return from_rational(field, Rational(-field->polynomial().coeffs[0],
                                             field->polynomial().coeffs[1]));
    return {std::move(field), {Rational(0), Rational(1)}};
}

FieldElement FieldElement::from_rational(FieldPtr field, const Rational& value) {
    return {std::move(field), {value}};
}

bool FieldElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) raise(ErrorKind::DegenerateElement, "element is not rational");
    return coords_.empty() ? Rational(0) : coords_[0];
}

void FieldElement::check_same_field(const FieldElement& other) const {
    if (!field_->same_field(*other.field_))
        raise(ErrorKind::FieldMismatch, "elements live in different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same_field(b);
    std::vector<Rational> c(a.coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return {a.field_, std::move(c)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check_same_field(b);
    std::vector<Rational> c(a.coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
    return {a.field_, std::move(c)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same_field(b);
    const size_t d = a.coords_.size();
    std::vector<Rational> c(2 * d - 1, Rational(0));
    for (size_t i = 0; i < d; ++i) {
        if (a.coords_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            if (b.coords_[j] == 0) continue;
            c[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    return {a.field_, std::move(c)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::operator-() const {
    std::vector<Rational> c(coords_);
    for (auto& v : c) v = -v;
    return {field_, std::move(c)};
}

FieldElement FieldElement::scale(const Rational& s) const {
    std::vector<Rational> c(coords_);
    for (auto& v : c) v *= s;
    return {field_, std::move(c)};
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) raise(ErrorKind::DivisionByZero, "inverse of zero element");
    // Extended Euclid in Q[X]: u*g + v*f = gcd = const, inverse = u / const.
    RatPoly f = RatPoly::from_int(field_->polynomial());
    RatPoly g = element_poly(coords_);
    RatPoly r0 = f, r1 = g;
    RatPoly u0, u1(std::vector<Rational>{Rational(1)});
    // u tracks the g-cofactor: r_k = u_k * g (mod f).
    while (r1.degree() > 0) {
        auto [q, r2] = divmod(r0, r1);
        RatPoly u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        if (r1.is_zero())
            raise(ErrorKind::DivisionByZero, "element shares a factor with the field polynomial");
    }
    Rational c = r1.coeffs[0];
    std::vector<Rational> inv = u1.coeffs;
    for (auto& v : inv) v /= c;
    return {field_, std::move(inv)};
}

FieldElement FieldElement::pow(long n) const {
    if (n == 0) return one(field_);
    if (n < 0) return inverse().pow(-n);
    FieldElement acc = one(field_);
    FieldElement base = *this;
    unsigned long e = static_cast<unsigned long>(n);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_field(*b.field_) && a.coords_ == b.coords_;
}

std::vector<std::vector<Rational>> FieldElement::multiplication_matrix() const {
    const size_t d = coords_.size();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Rational> col = coords_; // column j holds x * alpha^j
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) m[i][j] = col[i];
        if (j + 1 < d) {
            // multiply by alpha: shift up and reduce
            col.insert(col.begin(), Rational(0));
            reduce_mod_field(col, field_->polynomial());
        }
    }
    return m;
}

Rational FieldElement::trace() const {
    auto m = multiplication_matrix();
    Rational t(0);
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

RatPoly FieldElement::charpoly_monic() const {
    // Faddeev-LeVerrier over exact rationals.
    const size_t d = coords_.size();
    auto a = multiplication_matrix();
    std::vector<std::vector<Rational>> n(d, std::vector<Rational>(d, Rational(0)));
    for (size_t i = 0; i < d; ++i) n[i][i] = 1;
    std::vector<Rational> coeffs(d + 1, Rational(0));
    coeffs[d] = 1;
    for (size_t k = 1; k <= d; ++k) {
        // m = a * n
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
        for (size_t i = 0; i < d; ++i)
            for (size_t l = 0; l < d; ++l) {
                if (a[i][l] == 0) continue;
                for (size_t j = 0; j < d; ++j) m[i][j] += a[i][l] * n[l][j];
            }
        Rational tr(0);
        for (size_t i = 0; i < d; ++i) tr += m[i][i];
        Rational ck = -tr / Rational(static_cast<long>(k));
        coeffs[d - k] = ck;
        n = std::move(m);
        for (size_t i = 0; i < d; ++i) n[i][i] += ck;
    }
    return RatPoly(std::move(coeffs));
}

Rational FieldElement::norm() const {
    RatPoly cp = charpoly_monic();
    Rational c0 = cp.coeffs.empty() ? Rational(0) : cp.coeffs[0];
    return (field_->degree() % 2 == 0) ? c0 : -c0;
}

IntPoly FieldElement::charpoly_scaled() const {
    RatPoly cp = charpoly_monic();
    if (poly_gcd(cp, cp.derivative()).degree() > 0)
        raise(ErrorKind::DegenerateElement,
              "element does not generate the field (degree < " +
                  std::to_string(field_->degree()) + ")");
    return cp.clear_denominators();
}

RatPoly FieldElement::minpoly_monic() const {
    if (is_zero()) return RatPoly(std::vector<Rational>{Rational(0), Rational(1)});
    RatPoly cp = charpoly_monic();
    return squarefree_part(cp);
}

IntPoly FieldElement::minpoly_int() const { return minpoly_monic().clear_denominators(); }

int FieldElement::element_degree() const { return minpoly_monic().degree(); }

bool FieldElement::is_algebraic_integer() const {
    RatPoly cp = charpoly_monic();
    for (const auto& c : cp.coeffs)
        if (!is_integer(c)) return false;
    return true;
}

Rational FieldElement::subfield_trace() const {
    RatPoly mp = minpoly_monic();
    int e = mp.degree();
    if (e < 1) return Rational(0);
    // monic: trace = -coefficient of X^{e-1}
    return -mp.coeffs[static_cast<size_t>(e - 1)];
}

CertifiedComplex FieldElement::embed(unsigned index, unsigned precision_bits) const {
    CertifiedComplex root = field_->embedding(index, precision_bits);
    unsigned prec = std::max(precision_bits, root.precision());
    CertifiedComplex acc(CertifiedReal(0, prec), CertifiedReal(0, prec));
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
        acc = acc * root;
        acc = acc + CertifiedComplex(CertifiedReal::from_rational(*it, prec),
                                     CertifiedReal(0, prec));
    }
    return acc;
}

CertifiedComplex FieldElement::identity_value(unsigned precision_bits) const {
    return embed(field_->identity_index(), precision_bits);
}

CertifiedReal FieldElement::identity_real(unsigned precision_bits) const {
    if (!field_->identity_is_real())
        raise(ErrorKind::DomainError, "identity embedding of this field is complex");
    return identity_value(precision_bits).re();
}

RealProducer FieldElement::identity_real_producer() const {
    FieldElement self = *this;
    return [self](unsigned prec) { return self.identity_real(prec); };
}

CertifiedReal FieldElement::house(unsigned precision_bits) const {
    if (is_zero()) return CertifiedReal(0, precision_bits); // flagged convention
    const unsigned rows = field_->real_embeddings() + field_->complex_pairs();
    CertifiedReal best = embed(0, precision_bits).abs();
    for (unsigned j = 1; j < rows; ++j)
        best = max_enclosure(best, embed(j, precision_bits).abs());
    return best;
}

CertifiedReal FieldElement::height(unsigned precision_bits) const {
    if (is_zero()) return CertifiedReal(0, precision_bits); // flagged convention
    const int d = field_->degree();
    IntPoly cleared = charpoly_monic().clear_denominators();
    CertifiedReal acc = log(CertifiedReal::exact_int(cleared.leading(), precision_bits));
    const CertifiedReal one(1, precision_bits);
    const unsigned rows = field_->real_embeddings() + field_->complex_pairs();
    for (unsigned j = 0; j < rows; ++j) {
        CertifiedReal mag = embed(j, precision_bits).abs();
        CertifiedReal term = log(max_enclosure(one, mag));
        if (field_->log_row_weight(j) == 2) term = term + term;
        acc = acc + term;
    }
    return acc / CertifiedReal(d, precision_bits);
}

CertifiedReal FieldElement::log_mahler(unsigned precision_bits) const {
    return height(precision_bits) * CertifiedReal(element_degree(), precision_bits);
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = coords_.size(); i-- > 0;) {
        const Rational& c = coords_[i];
        if (c == 0) continue;
        Rational a = c;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (a < 0) a = -a;
        bool show = (a != 1) || i == 0;
        if (show) os << rational_to_string(a);
        if (i > 0) {
            if (show) os << "*";
            os << "w";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace utl
