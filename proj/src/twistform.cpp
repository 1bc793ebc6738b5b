#include "utl/twistform.hpp"

#include <algorithm>

#include "utl/error.hpp"

namespace utl {

TwistedForm twist_form(const FieldElement& alpha, const UnitSpec& eps) {
    FieldElement twisted = eps.value * alpha;
    IntPoly cp = twisted.charpoly_scaled(); // DegenerateElement unless full degree
    return {alpha.field(), std::move(twisted), eps.label, cp.to_descending()};
}

Int eval_form(const std::vector<Int>& coeffs_desc, const Int& x, const Int& y) {
    // Horner in x with a running power of y.
    Int acc = 0;
    Int ypow = 1;
    for (size_t i = 0; i < coeffs_desc.size(); ++i) {
        acc = acc * x + coeffs_desc[i] * ypow;
        if (i + 1 < coeffs_desc.size()) ypow *= y;
    }
    return acc;
}

Int eval_form(const TwistedForm& form, const Int& x, const Int& y) {
    return eval_form(form.coeffs, x, y);
}

CertifiedReal fpq_product(const TwistedForm& form, const Int& p, const Int& q,
                          long radius_exp2) {
    const int d = form.field->degree();
    const Int& a0 = form.field->leading_coefficient();
    Rational pq(p, q);
    pq.canonicalize();
    FieldElement twisted = form.twisted;
    FieldPtr field = form.field;
    auto producer = [field, twisted, pq, q, a0, d](unsigned prec) {
        CertifiedReal acc = CertifiedReal::exact_int(a0, prec) *
                            pow_int(CertifiedReal::exact_int(q, prec), d);
        CertifiedComplex target(CertifiedReal::from_rational(pq, prec), CertifiedReal(0, prec));
        for (int j = 0; j < d; ++j)
            acc = acc * (twisted.embed(static_cast<unsigned>(j), prec) - target).abs();
        return acc;
    };
    return refine_to_exp(producer, radius_exp2);
}

IntegralityResult nonzero_integrality_check(const TwistedForm& form, const Int& p, const Int& q) {
    if (q < 1) raise(ErrorKind::UsageError, "q must be positive");
    Int g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) raise(ErrorKind::UsageError, "p/q must be in lowest terms");
    IntegralityResult res;
    res.value = eval_form(form, p, q);
    res.exact_root = (res.value == 0);
    Int av;
    mpz_abs(av.get_mpz_t(), res.value.get_mpz_t());
    res.verdict = (av >= 1) ? Verdict::HOLDS : Verdict::FAILS;
    return res;
}

namespace {

// Integer cells [u, u+1) containing a real root of g (ascending coefficients),
// restricted to [lo, hi]. Exact integer arithmetic throughout.
void root_cells(const std::vector<Int>& g, const Int& lo, const Int& hi, std::vector<Int>& out) {
    int deg = static_cast<int>(g.size()) - 1;
    while (deg > 0 && g[static_cast<size_t>(deg)] == 0) --deg;
    if (deg <= 0) return;
    auto eval = [&](const Int& x) {
        Int acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * x + g[static_cast<size_t>(i)];
        return acc;
    };
    if (deg == 1) {
        // root = -g0/g1
        Int cell = floor_div(-g[0], g[1]);
        if (cell >= lo && cell <= hi) out.push_back(cell);
        return;
    }
    std::vector<Int> deriv(static_cast<size_t>(deg));
    for (int i = 1; i <= deg; ++i) deriv[static_cast<size_t>(i - 1)] = g[static_cast<size_t>(i)] * i;
    std::vector<Int> crit;
    root_cells(deriv, lo, hi, crit);

    std::vector<Int> breakpoints;
    breakpoints.push_back(lo);
    for (const Int& u : crit) {
        if (u >= lo && u <= hi) breakpoints.push_back(u);
        if (u + 1 >= lo && u + 1 <= hi) breakpoints.push_back(u + 1);
    }
    breakpoints.push_back(hi);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    for (size_t s = 0; s + 1 < breakpoints.size(); ++s) {
        Int a = breakpoints[s], b = breakpoints[s + 1];
        Int fa = eval(a), fb = eval(b);
        if (fa == 0) {
            if (out.empty() || out.back() != a) out.push_back(a);
        }
        if (mpz_sgn(fa.get_mpz_t()) * mpz_sgn(fb.get_mpz_t()) < 0) {
            // monotone segment: bisect the unique sign change
            while (b - a > 1) {
                Int mid = floor_div(a + b, Int(2));
                Int fm = eval(mid);
                if (fm == 0) {
                    a = mid;
                    break;
                }
                if (mpz_sgn(fm.get_mpz_t()) == mpz_sgn(fa.get_mpz_t())) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            if (out.empty() || out.back() != a) out.push_back(a);
        }
    }
    // trailing endpoint root
    if (eval(hi) == 0 && (out.empty() || out.back() != hi)) out.push_back(hi);
}

} // namespace

std::vector<ThueSolution> enum_solutions(const std::vector<Int>& coeffs_desc, const Int& k,
                                         long box) {
    if (k == 0) raise(ErrorKind::UsageError, "k must be nonzero");
    std::vector<ThueSolution> out;
    if (box <= 0) return out;
    const size_t n = coeffs_desc.size();
    if (n < 2) raise(ErrorKind::UsageError, "form must have degree >= 1");
    if (coeffs_desc.front() == 0) raise(ErrorKind::UsageError, "leading form coefficient is zero");
    const int d = static_cast<int>(n) - 1;

    Int lo(-box), hi(box);
    for (Int y = lo; y <= hi; ++y) {
        // g(x) = F(x, y) - k, ascending in x
        std::vector<Int> g(n);
        Int ypow = 1;
        for (int i = d; i >= 0; --i) {
            g[static_cast<size_t>(i)] = coeffs_desc[static_cast<size_t>(d - i)] * ypow;
            ypow *= y;
        }
        g[0] -= k;
        std::vector<Int> cells;
        root_cells(g, lo, hi, cells);
        auto eval = [&](const Int& x) {
            Int acc = 0;
            for (int i = d; i >= 0; --i) acc = acc * x + g[static_cast<size_t>(i)];
            return acc;
        };
        Int prev;
        bool have_prev = false;
        for (const Int& cell : cells) {
            for (Int x = cell; x <= cell + 1; ++x) {
                if (x < lo || x > hi) continue;
                if (have_prev && x == prev) continue;
                if (eval(x) == 0) {
                    out.push_back({x, y, x == 0 || y == 0});
                    prev = x;
                    have_prev = true;
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ThueSolution& a, const ThueSolution& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ThueSolution& a, const ThueSolution& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              out.end());
    return out;
}

std::vector<ThueSolution> enum_solutions(const TwistedForm& form, const Int& k, long box) {
    return enum_solutions(form.coeffs, k, box);
}

std::vector<FamilyEnumCell> family_enum(const FieldElement& alpha,
                                        const std::vector<UnitSpec>& units,
                                        const std::vector<Int>& ks, long box) {
    std::vector<FamilyEnumCell> out;
    for (const auto& unit : units) {
        TwistedForm form = twist_form(alpha, unit);
        for (const Int& k : ks) {
            FamilyEnumCell cell;
            cell.unit_label = unit.label;
            cell.k = k;
            try {
                cell.solutions = enum_solutions(form, k, box);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            out.push_back(std::move(cell));
        }
    }
    return out;
}

} // namespace utl
