#include "utl/poly.hpp"

#include <algorithm>

#include "utl/error.hpp"

namespace utl {

void IntPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

Int IntPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

CertifiedReal IntPoly::eval(const CertifiedReal& x) const {
    CertifiedReal acc(0, x.precision());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + CertifiedReal::exact_int(*it, x.precision());
    return acc;
}

CertifiedComplex IntPoly::eval(const CertifiedComplex& x) const {
    unsigned prec = x.precision();
    CertifiedComplex acc(CertifiedReal(0, prec), CertifiedReal(0, prec));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x;
        acc = acc + CertifiedComplex(CertifiedReal::exact_int(*it, prec), CertifiedReal(0, prec));
    }
    return acc;
}

double IntPoly::eval_double(double x) const {
    double acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

IntPoly IntPoly::derivative() const {
    std::vector<Int> d;
    for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * static_cast<long>(i));
    return IntPoly(std::move(d));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& c : coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    Int g = content();
    if (leading() < 0) g = -g;
    std::vector<Int> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c / g);
    return IntPoly(std::move(out));
}

std::vector<double> IntPoly::to_doubles() const {
    std::vector<double> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.get_d());
    return out;
}

IntPoly IntPoly::from_descending(const std::vector<Int>& desc) {
    std::vector<Int> asc(desc.rbegin(), desc.rend());
    return IntPoly(std::move(asc));
}

std::vector<Int> IntPoly::to_descending() const {
    return std::vector<Int>(coeffs.rbegin(), coeffs.rend());
}

bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs == b.coeffs; }

void RatPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

RatPoly RatPoly::from_int(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs.size());
    for (const auto& v : p.coeffs) c.emplace_back(v);
    return RatPoly(std::move(c));
}

RatPoly RatPoly::derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * Rational(static_cast<long>(i)));
    return RatPoly(std::move(d));
}

void RatPoly::make_monic() {
    if (is_zero()) return;
    Rational lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
}

IntPoly RatPoly::clear_denominators() const {
    if (is_zero()) return {};
    Int lcm = 1;
    for (const auto& c : coeffs)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        Rational scaled = c * Rational(lcm);
        out.push_back(scaled.get_num());
    }
    return IntPoly(std::move(out)).primitive_part();
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) out[i + j] += a.coeffs[i] * b.coeffs[j];
    return RatPoly(std::move(out));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> out(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) out[i] += a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) out[i] -= b.coeffs[i];
    return RatPoly(std::move(out));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) raise(ErrorKind::DivisionByZero, "polynomial division by zero");
    RatPoly rem = num;
    std::vector<Rational> q(std::max<size_t>(1, num.coeffs.size()), Rational(0));
    const Rational lead = den.coeffs.back();
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
        int shift = rem.degree() - den.degree();
        Rational factor = rem.coeffs.back() / lead;
        q[static_cast<size_t>(shift)] = factor;
        for (size_t i = 0; i < den.coeffs.size(); ++i)
            rem.coeffs[i + static_cast<size_t>(shift)] -= factor * den.coeffs[i];
        rem.trim();
    }
    return {RatPoly(std::move(q)), rem};
}

RatPoly divide_exact(const RatPoly& num, const RatPoly& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero()) raise(ErrorKind::DomainError, "inexact polynomial division");
    return q;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    a.make_monic();
    return a;
}

RatPoly squarefree_part(const RatPoly& f) {
    if (f.is_zero() || f.degree() == 0) return f;
    RatPoly g = poly_gcd(f, f.derivative());
    RatPoly sf = divide_exact(f, g);
    sf.make_monic();
    return sf;
}

namespace {

std::vector<Int> divisors_of(const Int& n) {
    // Small-operand helper: |n| at new_field scale; trial division is fine.
    std::vector<Int> out;
    Int a;
    mpz_abs(a.get_mpz_t(), n.get_mpz_t());
    if (a == 0) return out;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            Int other = a / d;
            if (other != d) out.push_back(other);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<Rational> rational_roots(const IntPoly& f) {
    std::vector<Rational> roots;
    if (f.is_zero() || f.degree() < 1) return roots;
    IntPoly p = f.primitive_part();
    // Strip powers of X first.
    size_t zero_pow = 0;
    while (zero_pow < p.coeffs.size() && p.coeffs[zero_pow] == 0) ++zero_pow;
    if (zero_pow > 0) {
        roots.emplace_back(0);
        p = IntPoly(std::vector<Int>(p.coeffs.begin() + static_cast<long>(zero_pow), p.coeffs.end()));
        if (p.degree() < 1) return roots;
    }
    for (const Int& den : divisors_of(p.leading())) {
        for (const Int& num : divisors_of(p.constant())) {
            for (int sign : {1, -1}) {
                Rational cand(sign * num, den);
                cand.canonicalize();
                if (p.eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool has_small_factor(const IntPoly& f) {
    if (f.degree() < 2) return false;
    if (!rational_roots(f).empty()) return true;
    if (f.degree() > 4 || f.degree() < 4) return false;
    // Quadratic factor search for quartics: b2*X^2 + b1*X + b0 with
    // b2 | lead, b0 | const and |b1| within a Landau-Mignotte style bound.
    IntPoly p = f.primitive_part();
    Int norm2 = 0;
    for (const auto& c : p.coeffs) norm2 += c * c;
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound = 2 * (bound + 1);
    RatPoly fp = RatPoly::from_int(p);
    for (const Int& b2 : divisors_of(p.leading())) {
        Int mid_bound = bound * b2;
        for (const Int& b0a : divisors_of(p.constant())) {
            for (int s0 : {1, -1}) {
                Int b0 = s0 * b0a;
                for (Int b1 = -mid_bound; b1 <= mid_bound; ++b1) {
                    RatPoly cand(std::vector<Rational>{Rational(b0), Rational(b1), Rational(b2)});
                    auto [q, r] = divmod(fp, cand);
                    (void)q;
                    if (r.is_zero()) return true;
                }
            }
        }
    }
    return false;
}

} // namespace utl
