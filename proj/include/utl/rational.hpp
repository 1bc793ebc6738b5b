#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace utl {

// Exact integers and rationals are GMP values; mpq_class keeps the canonical
// form (gcd 1, positive denominator) the rest of the library relies on.
using Int = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& r) { return mpz_cmp_ui(r.get_den().get_mpz_t(), 1) == 0; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rational(const Rational& r);

// "p/q" with q > 0 and gcd(p,q) = 1; plain "p" when q = 1.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& text);

std::string int_to_string(const Int& n);
Int int_from_string(const std::string& text);

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& values);
std::vector<Rational> rationals_from_strings(const std::vector<std::string>& texts);

} // namespace utl
