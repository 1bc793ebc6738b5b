#pragma once

#include <vector>

#include "utl/ball.hpp"
#include "utl/poly.hpp"

namespace utl {

// Certified roots of a squarefree integer polynomial. Layout: the r1 real
// roots first (ascending), then the r2 upper-half-plane representatives
// (sorted by center), then their conjugates in matching order.
struct IsolatedRoots {
    std::vector<CertifiedComplex> roots;
    unsigned real_count = 0;     // r1
    unsigned complex_pairs = 0;  // r2
    unsigned precision = 0;      // working precision that certified the discस
};

// Aberth iteration plus Weierstrass-disc certification: every returned
// enclosure contains exactly one root and the discs are pairwise disjoint.
// Raises NotSquarefree when gcd(f, f') is non-constant and PrecisionExhausted
// when the discs cannot be separated within max_bits.
IsolatedRoots isolate_roots(const IntPoly& f, unsigned precision_bits,
                            unsigned max_bits = kDefaultPrecisionCeiling);

} // namespace utl
