#pragma once

#include <vector>

#include "utl/ball.hpp"
#include "utl/rational.hpp"

namespace utl {

// Dense univariate polynomial over Z, coefficients in ascending powers,
// trailing (leading) zeros trimmed.
struct IntPoly {
    std::vector<Int> coeffs; // coeffs[i] multiplies X^i

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

    void trim();
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Int& leading() const { return coeffs.back(); }
    const Int& constant() const { return coeffs.front(); }

    Int eval(const Int& x) const;
    Rational eval(const Rational& x) const;
    CertifiedReal eval(const CertifiedReal& x) const;
    CertifiedComplex eval(const CertifiedComplex& x) const;
    double eval_double(double x) const;

    IntPoly derivative() const;
    Int content() const;
    IntPoly primitive_part() const;   // content 1, positive leading coefficient
    std::vector<double> to_doubles() const;

    // Descending-order convenience used by the file formats (a0 first).
    static IntPoly from_descending(const std::vector<Int>& desc);
    std::vector<Int> to_descending() const;
};

bool operator==(const IntPoly& a, const IntPoly& b);

// Polynomial over Q in ascending powers, for exact gcd/minpoly work.
struct RatPoly {
    std::vector<Rational> coeffs;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }
    static RatPoly from_int(const IntPoly& p);

    void trim();
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    RatPoly derivative() const;
    void make_monic();

    // Integer polynomial with content 1 and positive leading coefficient.
    IntPoly clear_denominators() const;
};

RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
// Exact division; raises DomainError when the remainder is nonzero.
RatPoly divide_exact(const RatPoly& num, const RatPoly& den);
std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den);
RatPoly poly_gcd(RatPoly a, RatPoly b); // monic gcd
// Squarefree part f / gcd(f, f'), monic.
RatPoly squarefree_part(const RatPoly& f);

// All rational roots (exact), via divisors of the outer coefficients.
std::vector<Rational> rational_roots(const IntPoly& f);

// Searches a monic-image factorization screen: rational linear factors always,
// quadratic integer factors for degree <= 4. Returns true when a factor was found.
bool has_small_factor(const IntPoly& f);

} // namespace utl
