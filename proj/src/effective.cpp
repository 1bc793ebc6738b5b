#include "utl/effective.hpp"

#include <algorithm>

#include "utl/error.hpp"

namespace utl {

namespace {

CertifiedReal max3(const CertifiedReal& a, const CertifiedReal& b, const CertifiedReal& c) {
    return max_enclosure(a, max_enclosure(b, c));
}

// max{|p|, q, 2} as an exact integer.
Int pq_max(const Int& p, const Int& q) {
    Int ap;
    mpz_abs(ap.get_mpz_t(), p.get_mpz_t());
    Int m = std::max(ap, q);
    return std::max(m, Int(2));
}

} // namespace

PrincipalLogResult principal_log_setup(const FieldElement& alpha, const FieldElement& eps,
                                       const Int& p, const Int& q, unsigned precision_bits) {
    if (q <= 0) raise(ErrorKind::UsageError, "q must be positive");
    if (p == 0)
        raise(ErrorKind::ZeroP, "p = 0: the gamma reduction is undefined, use the direct gap");
    FieldElement twisted = eps * alpha;
    Rational qp(q, p); // gamma = eps*alpha * q/p
    qp.canonicalize();
    FieldElement gamma = twisted.scale(qp);
    if (gamma == FieldElement::one(alpha.field()))
        raise(ErrorKind::ExactEquality, "gamma = 1: eps*alpha equals p/q exactly");

    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    unsigned prec = std::max(precision_bits, 64u);
    PrincipalLogResult res;
    for (;;) {
        CertifiedComplex g = gamma.identity_value(prec);
        CertifiedComplex one(CertifiedReal(1, prec), CertifiedReal(0, prec));
        CertifiedReal dist = (g - one).abs();
        CertifiedReal half = CertifiedReal(1, prec) / CertifiedReal(2, prec);
        res.gamma_minus_one = dist;
        Verdict lt_half = certify_less(dist, half);
        if (lt_half == Verdict::FAILS ||
            certify_less_equal(half, dist) == Verdict::HOLDS) {
            // |gamma - 1| >= 1/2: the estimate is trivial here.
            res.skipped = true;
            Int ap;
            mpz_abs(ap.get_mpz_t(), p.get_mpz_t());
            res.trivial_bound = CertifiedReal::exact_int(ap, prec) /
                                (CertifiedReal(2, prec) * CertifiedReal::exact_int(q, prec));
            return res;
        }
        if (lt_half == Verdict::HOLDS) {
            try {
                res.lambda0 = g.principal_log();
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DomainError || prec >= ceiling) throw;
                prec = std::min(prec * 2, ceiling);
                continue;
            }
            CertifiedReal l0 = res.lambda0.abs();
            CertifiedReal two_dist = CertifiedReal(2, prec) * dist;
            Verdict upper = certify_less(l0, two_dist);
            Verdict lower = l0.definitely_positive() ? Verdict::HOLDS : Verdict::UNDECIDED;
            if (upper == Verdict::HOLDS && lower == Verdict::HOLDS) {
                res.lambda_inequality = Verdict::HOLDS;
                return res;
            }
            if (upper == Verdict::FAILS) {
                res.lambda_inequality = Verdict::FAILS; // impossible; surfaced loudly by callers
                return res;
            }
        }
        if (prec >= ceiling) {
            res.lambda_inequality = Verdict::UNDECIDED;
            raise(ErrorKind::PrecisionExhausted,
                  "principal log setup undecided at precision ceiling");
        }
        prec = std::min(prec * 2, ceiling);
    }
}

CertifiedReal baker_bound(const BakerInput& input) {
    const size_t m = input.lambdas.size();
    if (m == 0 || input.coefficients.size() != m || input.log_As.size() != m)
        raise(ErrorKind::UsageError, "baker input arity mismatch");
    bool all_zero = std::all_of(input.coefficients.begin(), input.coefficients.end(),
                                [](const Int& b) { return b == 0; });
    if (all_zero) raise(ErrorKind::UsageError, "coefficients must not all vanish");

    unsigned prec = input.B.precision();
    CertifiedReal one(1, prec);
    CertifiedReal e_ball = exp(one);

    // B >= max{|b_j|, e}, certified.
    CertifiedReal bmax = e_ball;
    for (const Int& b : input.coefficients) {
        Int ab;
        mpz_abs(ab.get_mpz_t(), b.get_mpz_t());
        bmax = max_enclosure(bmax, CertifiedReal::exact_int(ab, prec));
    }
    if (certify_less_equal(bmax, input.B) != Verdict::HOLDS)
        raise(ErrorKind::ConstraintViolation, "B >= max{|b_j|, e} not certified");

    // log A_j >= max{h(alpha_j), |lambda_j|, 1}, certified.
    for (size_t j = 0; j < m; ++j) {
        CertifiedReal h = j < input.heights.size() ? input.heights[j] : CertifiedReal(0, prec);
        CertifiedReal need = max3(h, input.lambdas[j].abs(), one);
        if (certify_less_equal(need, input.log_As[j]) != Verdict::HOLDS)
            raise(ErrorKind::ConstraintViolation,
                  "log A_" + std::to_string(j + 1) + " constraint not certified");
    }

    CertifiedReal exponent = input.kappa4 * log(input.B);
    for (const auto& la : input.log_As) exponent = exponent * la;
    return exp(-exponent);
}

EffectiveGapReport effective_gap(const FieldElement& alpha, const FieldElement& eps,
                                 const UnitBasis& basis, const Int& p, const Int& q,
                                 const EffectiveConfig& config, unsigned precision_bits) {
    const unsigned prec = std::max(precision_bits, 64u);
    EffectiveGapReport rep;
    FieldElement twisted = eps * alpha;

    auto direct_gap_at = [&](unsigned pb) {
        Rational pq(p, q);
        pq.canonicalize();
        return abs(twisted.identity_real(pb) - CertifiedReal::from_rational(pq, pb));
    };

    if (p == 0) {
        rep.zero_p = true;
        rep.skipped = true;
        rep.direct_gap = abs(twisted.identity_real(prec));
        rep.gap_lower_bound = rep.direct_gap;
        rep.sanity = Verdict::HOLDS;
        rep.kappa4_source = config.kappa4_user_supplied ? "user" : "default";
        return rep;
    }

    PrincipalLogResult pl = principal_log_setup(alpha, eps, p, q, prec);
    rep.lambda_inequality = pl.lambda_inequality;
    rep.direct_gap = direct_gap_at(prec);
    rep.kappa4_source = config.kappa4_user_supplied ? "user" : "default";

    if (pl.skipped) {
        rep.skipped = true;
        rep.gap_lower_bound = pl.trivial_bound;
        rep.sanity = certify_less_equal(rep.gap_lower_bound, rep.direct_gap);
        return rep;
    }
    rep.lambda0 = pl.lambda0;

    // eps = zeta * prod eps_i^{b_i}
    ExponentVector ev = recover_exponents(eps, basis, prec);
    rep.exponents = ev.exponents;
    const unsigned r = basis.rank();
    const unsigned m = r + 1;
    const int D = alpha.field()->degree();

    Rational kappa4_q = config.kappa4 ? *config.kappa4
                                      : Rational(Int(10000000000L) * static_cast<long>(m) * D);
    rep.kappa4_value = kappa4_q;

    // lambda_j = log eps_j (identity embedding), j <= r; lambda_{r+1} by the
    // exact cancellation lambda0 - sum b_j lambda_j.
    std::vector<CertifiedComplex> lambdas;
    std::vector<CertifiedReal> heights, log_As;
    std::vector<Int> bs;
    CertifiedComplex lam_last = pl.lambda0;
    CertifiedReal one(1, prec);
    for (unsigned j = 0; j < r; ++j) {
        CertifiedComplex lj = basis.units()[j].identity_value(prec).principal_log();
        CertifiedReal scale = CertifiedReal::exact_int(ev.exponents[j], prec);
        lam_last = lam_last - CertifiedComplex(scale * lj.re(), scale * lj.im());
        lambdas.push_back(lj);
        CertifiedReal hj = basis.units()[j].height(prec);
        heights.push_back(hj);
        log_As.push_back(max3(hj, lj.abs(), one).sup() + one / CertifiedReal(1024, prec));
        bs.push_back(ev.exponents[j]);
    }
    lambdas.push_back(lam_last);
    bs.push_back(Int(1));

    // A_{r+1} = kappa5 max{|p|, q, 2}; B = kappa6 log(house(eps) + 1).
    Int pqm = pq_max(p, q);
    CertifiedReal a_last = CertifiedReal::from_rational(config.kappa5, prec) *
                           CertifiedReal::exact_int(pqm, prec);
    rep.A_last = a_last;
    // h(e^{lambda_{r+1}}) = h(zeta alpha q / p) <= h(alpha) + log max{|p|, q}
    CertifiedReal h_last =
        alpha.height(prec) + log(CertifiedReal::exact_int(pqm, prec));
    heights.push_back(h_last);
    log_As.push_back(log(a_last));

    CertifiedReal house_eps = eps.house(prec);
    CertifiedReal B =
        CertifiedReal::from_rational(config.kappa6, prec) * log(house_eps + one);
    rep.B = B;

    BakerInput input;
    input.lambdas = std::move(lambdas);
    input.coefficients = std::move(bs);
    input.log_As = std::move(log_As);
    input.heights = std::move(heights);
    input.B = B;
    input.kappa4 = CertifiedReal::from_rational(kappa4_q, prec);
    input.degree_bound = static_cast<unsigned>(D);
    CertifiedReal rhs = baker_bound(input);
    rep.baker_rhs = rhs;

    // |eps*alpha - p/q| = |p/q| |gamma - 1| > |p| |lambda0| / (2q) >= |p| rhs / (2q)
    Int ap;
    mpz_abs(ap.get_mpz_t(), p.get_mpz_t());
    rep.gap_lower_bound = CertifiedReal::exact_int(ap, prec) * rhs /
                          (CertifiedReal(2, prec) * CertifiedReal::exact_int(q, prec));
    rep.sanity = certify_less_equal(rep.gap_lower_bound, rep.direct_gap);

    // kappa7 implied by bound = exp{-kappa7 (log B)(log max{|p|, q, 2})}
    {
        CertifiedReal prod(1, prec);
        for (unsigned j = 0; j < r; ++j) prod = prod * input.log_As[j];
        CertifiedReal logmax = log(CertifiedReal::exact_int(pqm, prec));
        rep.kappa7 = input.kappa4 * prod * input.log_As[r] / logmax;
    }
    // Theorem-shaped display bound (log(house+2))^{-kappa3 log max}
    {
        CertifiedReal base = log(house_eps + CertifiedReal(2, prec));
        CertifiedReal expo = -CertifiedReal::from_rational(config.kappa3, prec) *
                             log(CertifiedReal::exact_int(pqm, prec));
        rep.bound_thm_effectif = pow(base, expo);
    }
    return rep;
}

} // namespace utl
