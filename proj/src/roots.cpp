#include "utl/roots.hpp"

#include <algorithm>
#include <optional>

#include "utl/error.hpp"

namespace utl {

namespace {

// Plain midpoint complex arithmetic on mpfr for the Aberth iteration.
// Certification afterwards uses interval arithmetic, so nothing here needs
// directed rounding.
struct MC {
    mpfr_t re, im;
    explicit MC(mpfr_prec_t prec) {
        mpfr_init2(re, prec);
        mpfr_init2(im, prec);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    MC(const MC&) = delete;
    MC& operator=(const MC&) = delete;
    MC(MC&& other) noexcept {
        mpfr_init2(re, mpfr_get_prec(other.re));
        mpfr_init2(im, mpfr_get_prec(other.im));
        mpfr_swap(re, other.re);
        mpfr_swap(im, other.im);
    }
    ~MC() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

void mc_set(MC& dst, const MC& src) {
    mpfr_set(dst.re, src.re, MPFR_RNDN);
    mpfr_set(dst.im, src.im, MPFR_RNDN);
}

void mc_sub(MC& dst, const MC& a, const MC& b) {
    mpfr_sub(dst.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(dst.im, a.im, b.im, MPFR_RNDN);
}

void mc_mul(MC& dst, const MC& a, const MC& b, MC& scratch) {
    mpfr_mul(scratch.re, a.re, b.re, MPFR_RNDN);
    mpfr_mul(scratch.im, a.im, b.im, MPFR_RNDN);
    mpfr_sub(scratch.re, scratch.re, scratch.im, MPFR_RNDN);
    mpfr_mul(dst.im, a.re, b.im, MPFR_RNDN);
    mpfr_mul(scratch.im, a.im, b.re, MPFR_RNDN);
    mpfr_add(dst.im, dst.im, scratch.im, MPFR_RNDN);
    mpfr_set(dst.re, scratch.re, MPFR_RNDN);
}

void mc_div(MC& dst, const MC& a, const MC& b, MC& scratch) {
    mpfr_t n2;
    mpfr_init2(n2, mpfr_get_prec(b.re));
    mpfr_sqr(n2, b.re, MPFR_RNDN);
    mpfr_sqr(scratch.re, b.im, MPFR_RNDN);
    mpfr_add(n2, n2, scratch.re, MPFR_RNDN);
    // (a * conj(b)) / |b|^2
    mpfr_mul(scratch.re, a.re, b.re, MPFR_RNDN);
    mpfr_mul(scratch.im, a.im, b.im, MPFR_RNDN);
    mpfr_add(scratch.re, scratch.re, scratch.im, MPFR_RNDN);
    mpfr_mul(scratch.im, a.im, b.re, MPFR_RNDN);
    mpfr_mul(dst.im, a.re, b.im, MPFR_RNDN);
    mpfr_sub(dst.im, scratch.im, dst.im, MPFR_RNDN);
    mpfr_div(dst.re, scratch.re, n2, MPFR_RNDN);
    mpfr_div(dst.im, dst.im, n2, MPFR_RNDN);
    mpfr_clear(n2);
}

void mc_abs(mpfr_t dst, const MC& a) {
    mpfr_hypot(dst, a.re, a.im, MPFR_RNDN);
}

// f and f' at z in midpoint arithmetic.
void eval_poly_and_derivative(const std::vector<MC>& coeffs, const MC& z, MC& f, MC& df,
                              MC& s1, MC& s2) {
    mpfr_set_zero(f.re, 1);
    mpfr_set_zero(f.im, 1);
    mpfr_set_zero(df.re, 1);
    mpfr_set_zero(df.im, 1);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        mc_mul(s1, df, z, s2);
        mc_set(df, s1);
        mpfr_add(df.re, df.re, f.re, MPFR_RNDN);
        mpfr_add(df.im, df.im, f.im, MPFR_RNDN);
        mc_mul(s1, f, z, s2);
        mc_set(f, s1);
        mpfr_add(f.re, f.re, it->re, MPFR_RNDN);
        mpfr_add(f.im, f.im, it->im, MPFR_RNDN);
    }
}

struct Candidate {
    CertifiedComplex center_point; // exact point (radius 0 components)
    CertifiedReal radius;          // exact upper bound, d * sup|W_i|
};

// Exact point ball from an mpfr pair.
CertifiedComplex point_of(const MC& z) {
    return {CertifiedReal::exact_from_mpfr(z.re), CertifiedReal::exact_from_mpfr(z.im)};
}

} // namespace

IsolatedRoots isolate_roots(const IntPoly& f_in, unsigned precision_bits, unsigned max_bits) {
    IntPoly f = f_in.primitive_part();
    int d = f.degree();
    if (d < 1) raise(ErrorKind::DomainError, "cannot isolate roots of a constant polynomial");
    {
        RatPoly fq = RatPoly::from_int(f);
        RatPoly g = poly_gcd(fq, fq.derivative());
        if (g.degree() > 0) raise(ErrorKind::NotSquarefree, "gcd(f, f') is non-constant");
    }

    IsolatedRoots out;
    if (d == 1) {
        Rational root(-f.coeffs[0], f.coeffs[1]);
        root.canonicalize();
        CertifiedReal re = CertifiedReal::from_rational(root, precision_bits);
        out.roots.push_back(CertifiedComplex(re, CertifiedReal(0, precision_bits)));
        out.real_count = 1;
        out.complex_pairs = 0;
        out.precision = precision_bits;
        return out;
    }

    unsigned du = static_cast<unsigned>(d);
    unsigned prec = std::max(precision_bits, 64u);
    std::vector<MC> z; // current approximations, reused across escalations
    bool have_seeds = false;

    while (true) {
        mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
        std::vector<MC> coeffs;
        coeffs.reserve(f.coeffs.size());
        for (const auto& c : f.coeffs) {
            coeffs.emplace_back(p);
            mpfr_set_z(coeffs.back().re, c.get_mpz_t(), MPFR_RNDN);
        }

        std::vector<MC> zs;
        zs.reserve(du);
        if (!have_seeds) {
            // Cauchy bound R = 1 + max |a_i| / |a_d|, start points on that circle
            // with an angular offset that breaks conjugate symmetry.
            mpfr_t bound, t;
            mpfr_init2(bound, p);
            mpfr_init2(t, p);
            mpfr_set_ui(bound, 0, MPFR_RNDN);
            for (int i = 0; i < d; ++i) {
                mpfr_set_z(t, f.coeffs[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
                mpfr_abs(t, t, MPFR_RNDN);
                mpfr_max(bound, bound, t, MPFR_RNDN);
            }
            mpfr_set_z(t, f.leading().get_mpz_t(), MPFR_RNDN);
            mpfr_abs(t, t, MPFR_RNDN);
            mpfr_div(bound, bound, t, MPFR_RNDN);
            mpfr_add_ui(bound, bound, 1, MPFR_RNDN);
            for (unsigned k = 0; k < du; ++k) {
                zs.emplace_back(p);
                mpfr_t theta;
                mpfr_init2(theta, p);
                mpfr_const_pi(theta, MPFR_RNDN);
                mpfr_mul_ui(theta, theta, 2 * k + 1, MPFR_RNDN);
                mpfr_div_ui(theta, theta, du, MPFR_RNDN);
                mpfr_add_d(theta, theta, 0.3847, MPFR_RNDN);
                mpfr_sin_cos(zs[k].im, zs[k].re, theta, MPFR_RNDN);
                mpfr_mul(zs[k].re, zs[k].re, bound, MPFR_RNDN);
                mpfr_mul(zs[k].im, zs[k].im, bound, MPFR_RNDN);
                mpfr_clear(theta);
            }
            mpfr_clear(bound);
            mpfr_clear(t);
        } else {
            for (unsigned k = 0; k < du; ++k) {
                zs.emplace_back(p);
                mpfr_set(zs[k].re, z[k].re, MPFR_RNDN);
                mpfr_set(zs[k].im, z[k].im, MPFR_RNDN);
            }
        }

        // Aberth-Ehrlich until the Newton corrections stall below target.
        MC fC(p), dfC(p), s1(p), s2(p), sum(p), corr(p), newton(p), one(p);
        mpfr_set_ui(one.re, 1, MPFR_RNDN);
        mpfr_t tol, mag, step;
        mpfr_init2(tol, 64);
        mpfr_init2(mag, 64);
        mpfr_init2(step, 64);
        mpfr_set_ui_2exp(tol, 1, -static_cast<mpfr_exp_t>(prec) + 6, MPFR_RNDN);
        unsigned max_iter = 60 + prec / 2;
        for (unsigned iter = 0; iter < max_iter; ++iter) {
            bool moved = false;
            for (unsigned i = 0; i < du; ++i) {
                eval_poly_and_derivative(coeffs, zs[i], fC, dfC, s1, s2);
                if (mpfr_zero_p(fC.re) && mpfr_zero_p(fC.im)) continue;
                mc_div(newton, fC, dfC, s1); // f/f'
                mpfr_set_zero(sum.re, 1);
                mpfr_set_zero(sum.im, 1);
                for (unsigned j = 0; j < du; ++j) {
                    if (j == i) continue;
                    mc_sub(s2, zs[i], zs[j]);
                    mc_div(s1, one, s2, corr);
                    mpfr_add(sum.re, sum.re, s1.re, MPFR_RNDN);
                    mpfr_add(sum.im, sum.im, s1.im, MPFR_RNDN);
                }
                // z -= newton / (1 - newton * sum)
                mc_mul(s1, newton, sum, s2);
                mpfr_ui_sub(s1.re, 1, s1.re, MPFR_RNDN);
                mpfr_neg(s1.im, s1.im, MPFR_RNDN);
                mc_div(corr, newton, s1, s2);
                mpfr_sub(zs[i].re, zs[i].re, corr.re, MPFR_RNDN);
                mpfr_sub(zs[i].im, zs[i].im, corr.im, MPFR_RNDN);
                mc_abs(step, corr);
                mc_abs(mag, zs[i]);
                mpfr_add_ui(mag, mag, 1, MPFR_RNDN);
                mpfr_mul(mag, mag, tol, MPFR_RNDN);
                if (mpfr_cmp(step, mag) > 0) moved = true;
            }
            if (!moved) break;
        }
        mpfr_clear(tol);
        mpfr_clear(mag);
        mpfr_clear(step);

        // Snap approximations whose imaginary part is far below the working
        // precision onto the real axis, then make conjugate pairs bit-exact.
        // Both are guesses; the Weierstrass certification below rejects them
        // if they are wrong and precision escalates.
        {
            mpfr_t thresh, imabs;
            mpfr_init2(thresh, 64);
            mpfr_init2(imabs, 64);
            std::vector<bool> is_real(du, false), paired(du, false);
            for (unsigned i = 0; i < du; ++i) {
                mc_abs(thresh, zs[i]);
                mpfr_add_ui(thresh, thresh, 1, MPFR_RNDN);
                mpfr_mul_2si(thresh, thresh, -static_cast<long>(prec) / 2, MPFR_RNDN);
                mpfr_abs(imabs, zs[i].im, MPFR_RNDN);
                if (mpfr_cmp(imabs, thresh) <= 0) {
                    mpfr_set_zero(zs[i].im, 1);
                    is_real[i] = true;
                    paired[i] = true;
                }
            }
            MC diff(p);
            mpfr_t best, cur;
            mpfr_init2(best, 64);
            mpfr_init2(cur, 64);
            for (unsigned i = 0; i < du; ++i) {
                if (paired[i]) continue;
                paired[i] = true;
                int partner = -1;
                for (unsigned j = 0; j < du; ++j) {
                    if (paired[j] || j == i) continue;
                    mpfr_sub(diff.re, zs[i].re, zs[j].re, MPFR_RNDN);
                    mpfr_add(diff.im, zs[i].im, zs[j].im, MPFR_RNDN); // conj distance
                    mc_abs(cur, diff);
                    if (partner < 0 || mpfr_cmp(cur, best) < 0) {
                        partner = static_cast<int>(j);
                        mpfr_set(best, cur, MPFR_RNDN);
                    }
                }
                if (partner >= 0) {
                    mpfr_set(zs[static_cast<size_t>(partner)].re, zs[i].re, MPFR_RNDN);
                    mpfr_neg(zs[static_cast<size_t>(partner)].im, zs[i].im, MPFR_RNDN);
                    paired[static_cast<size_t>(partner)] = true;
                }
            }
            mpfr_clear(best);
            mpfr_clear(cur);
            mpfr_clear(thresh);
            mpfr_clear(imabs);
        }

        // Certification: Weierstrass corrections in interval arithmetic.
        std::vector<Candidate> cand;
        cand.reserve(du);
        bool certified = true;
        CertifiedReal lead = CertifiedReal::exact_int(f.leading(), prec);
        for (unsigned i = 0; i < du && certified; ++i) {
            CertifiedComplex zi = point_of(zs[i]);
            CertifiedComplex fz = f.eval(zi);
            CertifiedComplex denom(CertifiedReal(1, prec), CertifiedReal(0, prec));
            for (unsigned j = 0; j < du; ++j) {
                if (j == i) continue;
                denom = denom * (zi - point_of(zs[j]));
            }
            denom = denom * CertifiedComplex(lead, CertifiedReal(0, prec));
            CertifiedReal wi;
            try {
                wi = (fz.abs() / denom.abs()).sup();
            } catch (const Error&) {
                certified = false;
                break;
            }
            CertifiedReal radius = (CertifiedReal(d, 64) * wi).sup();
            cand.push_back({zi, radius});
        }

        if (certified) {
            // Pairwise disjoint discs.
            for (unsigned i = 0; i < du && certified; ++i) {
                for (unsigned j = i + 1; j < du && certified; ++j) {
                    CertifiedReal dist = (cand[i].center_point - cand[j].center_point).abs();
                    if (certify_less(cand[i].radius + cand[j].radius, dist) != Verdict::HOLDS)
                        certified = false;
                }
            }
        }

        std::vector<int> partner(du, -1);
        if (certified) {
            // Conjugation pairing: the conjugate of root i lives in conj(D_i);
            // demand a unique overlapping disc and involutive pairing.
            for (unsigned i = 0; i < du && certified; ++i) {
                int found = -1;
                for (unsigned j = 0; j < du; ++j) {
                    CertifiedReal dist = (cand[i].center_point.conj() - cand[j].center_point).abs();
                    if (certify_less(dist, cand[i].radius + cand[j].radius) != Verdict::FAILS) {
                        if (found >= 0) {
                            found = -2;
                            break;
                        }
                        found = static_cast<int>(j);
                    }
                }
                if (found < 0) {
                    certified = false;
                    break;
                }
                partner[i] = found;
            }
            for (unsigned i = 0; i < du && certified; ++i)
                if (partner[static_cast<size_t>(partner[i])] != static_cast<int>(i))
                    certified = false;
            // Non-real roots must clear the real axis for a clean signature.
            for (unsigned i = 0; i < du && certified; ++i) {
                if (partner[i] == static_cast<int>(i)) continue;
                CertifiedReal im_abs = abs(cand[i].center_point.im());
                if (certify_less(cand[i].radius, im_abs) != Verdict::HOLDS) certified = false;
            }
        }

        if (certified) {
            struct Entry {
                CertifiedComplex enclosure;
                CertifiedReal re, im; // exact point centers, for a total exact order
            };
            std::vector<Entry> reals, uppers;
            for (unsigned i = 0; i < du; ++i) {
                const CertifiedReal& rad = cand[i].radius;
                CertifiedReal re_ball = CertifiedReal::from_endpoints(
                    (cand[i].center_point.re() - rad).inf(),
                    (cand[i].center_point.re() + rad).sup(), prec);
                if (partner[i] == static_cast<int>(i)) {
                    reals.push_back({CertifiedComplex(re_ball, CertifiedReal(0, prec)),
                                     cand[i].center_point.re(), cand[i].center_point.im()});
                } else if (mpfr_sgn(cand[i].center_point.im().center_raw()) > 0) {
                    CertifiedReal im_ball = CertifiedReal::from_endpoints(
                        (cand[i].center_point.im() - rad).inf(),
                        (cand[i].center_point.im() + rad).sup(), prec);
                    uppers.push_back({CertifiedComplex(re_ball, im_ball),
                                      cand[i].center_point.re(), cand[i].center_point.im()});
                }
            }
            std::sort(reals.begin(), reals.end(), [](const Entry& a, const Entry& b) {
                return mpfr_cmp(a.re.center_raw(), b.re.center_raw()) < 0;
            });
            std::sort(uppers.begin(), uppers.end(), [](const Entry& a, const Entry& b) {
                int c = mpfr_cmp(a.re.center_raw(), b.re.center_raw());
                if (c != 0) return c < 0;
                return mpfr_cmp(a.im.center_raw(), b.im.center_raw()) < 0;
            });
            for (auto& e : reals) out.roots.push_back(std::move(e.enclosure));
            for (auto& e : uppers) out.roots.push_back(e.enclosure);
            for (auto& e : uppers) out.roots.push_back(e.enclosure.conj());
            out.real_count = static_cast<unsigned>(reals.size());
            out.complex_pairs = static_cast<unsigned>(uppers.size());
            out.precision = prec;
            return out;
        }

        // Keep the approximations as warm starts and escalate.
        z.clear();
        z.reserve(du);
        for (unsigned k = 0; k < du; ++k) {
            z.emplace_back(static_cast<mpfr_prec_t>(prec * 2));
            mpfr_set(z.back().re, zs[k].re, MPFR_RNDN);
            mpfr_set(z.back().im, zs[k].im, MPFR_RNDN);
        }
        have_seeds = true;
        if (prec >= max_bits)
            raise(ErrorKind::PrecisionExhausted,
                  "root discs not separable at " + std::to_string(prec) + " bits");
        prec *= 2;
    }
}

} // namespace utl
