#include "utl/approx.hpp"

#include <algorithm>
#include <set>

#include "utl/error.hpp"

namespace utl {

namespace {

// Escalating certified comparison: claim "a < b" (or <=).
Verdict decide(const RealProducer& a, const RealProducer& b, bool strict, unsigned start_bits,
               unsigned max_bits) {
    unsigned prec = std::max(start_bits, 64u);
    for (;;) {
        try {
            CertifiedReal va = a(prec);
            CertifiedReal vb = b(prec);
            Verdict v = strict ? certify_less(va, vb) : certify_less_equal(va, vb);
            if (v != Verdict::UNDECIDED) return v;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DomainError && e.kind() != ErrorKind::DivisionByZero &&
                e.kind() != ErrorKind::PrecisionExhausted)
                throw;
        }
        if (prec >= max_bits) return Verdict::UNDECIDED;
        prec = std::min(prec * 2, max_bits);
    }
}

Verdict invert(Verdict v) {
    if (v == Verdict::HOLDS) return Verdict::FAILS;
    if (v == Verdict::FAILS) return Verdict::HOLDS;
    return Verdict::UNDECIDED;
}

Rational reduced(const Int& p, const Int& q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

} // namespace

RealTarget real_target(const FieldElement& x) {
    RealTarget t;
    t.producer = x.identity_real_producer();
    if (x.is_rational()) t.exact = x.rational_value();
    return t;
}

RealTarget real_target(const Rational& x) {
    RealTarget t;
    Rational v = x;
    t.producer = [v](unsigned prec) { return CertifiedReal::from_rational(v, prec); };
    t.exact = v;
    return t;
}

ContinuedFraction continued_fraction(const RealTarget& x, unsigned count, unsigned max_bits) {
    if (max_bits == 0) max_bits = precision_ceiling();
    ContinuedFraction out;
    if (count == 0) return out;

    Int pm1(1), pm2(0), qm1(0), qm2(1);
    auto push = [&](const Int& a) {
        Int p = a * pm1 + pm2;
        Int q = a * qm1 + qm2;
        out.partial_quotients.push_back(a);
        out.convergents.emplace_back(Rational(p, q));
        out.convergents.back().canonicalize();
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;
    };

    if (x.exact) {
        Rational v = *x.exact;
        for (unsigned k = 0; k < count; ++k) {
            Int a = floor_rational(v);
            push(a);
            Rational frac = v - Rational(a);
            if (frac == 0) {
                out.rational_termination = true;
                break;
            }
            v = Rational(1) / frac;
        }
        return out;
    }

    unsigned prec = 128;
    for (;;) {
        out.partial_quotients.clear();
        out.convergents.clear();
        out.rational_termination = false;
        pm1 = 1;
        pm2 = 0;
        qm1 = 0;
        qm2 = 1;
        bool ok = true;
        try {
            CertifiedReal val = x.producer(prec);
            for (unsigned k = 0; k < count; ++k) {
                auto fl = val.certified_floor();
                if (!fl) {
                    ok = false;
                    break;
                }
                push(*fl);
                CertifiedReal frac = val - CertifiedReal::exact_int(*fl, prec);
                if (frac.is_zero_point()) {
                    out.rational_termination = true;
                    break;
                }
                if (k + 1 < count) val = CertifiedReal(1, prec) / frac;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DomainError && e.kind() != ErrorKind::DivisionByZero)
                throw;
            ok = false;
        }
        if (ok) return out;
        if (prec >= max_bits)
            raise(ErrorKind::PrecisionExhausted,
                  "continued fraction digits not certifiable at " + std::to_string(prec) +
                      " bits (rational target?)");
        prec = std::min(prec * 2, max_bits);
    }
}

CertifiedReal nearest_int_distance(const CertifiedReal& x) {
    CertifiedReal lo = x.inf(), hi = x.sup();
    unsigned prec = x.precision() + 64;
    CertifiedReal width = hi - lo;
    CertifiedReal half = CertifiedReal(1, prec) / CertifiedReal(2, prec);
    if (certify_less(width, half) != Verdict::HOLDS)
        raise(ErrorKind::PrecisionExhausted, "enclosure too wide for nearest-integer distance");

    // Width < 1/2, so at most one integer and one half-integer inside.
    Int nlo;
    mpfr_get_z(nlo.get_mpz_t(), lo.center_raw(), MPFR_RNDU); // ceil of lower endpoint
    bool has_int =
        certify_less_equal(CertifiedReal::exact_int(nlo, prec), hi) == Verdict::HOLDS;

    CertifiedReal two_lo = lo + lo, two_hi = hi + hi;
    Int m0;
    mpfr_get_z(m0.get_mpz_t(), two_lo.center_raw(), MPFR_RNDU);
    if (m0 % 2 == 0) m0 += 1;
    bool has_half =
        certify_less_equal(CertifiedReal::exact_int(m0, prec), two_hi) == Verdict::HOLDS;

    auto endpoint_distance = [prec](const CertifiedReal& t) {
        Int n;
        mpfr_get_z(n.get_mpz_t(), t.center_raw(), MPFR_RNDN);
        return abs(t - CertifiedReal::exact_int(n, prec));
    };
    CertifiedReal dlo = endpoint_distance(lo), dhi = endpoint_distance(hi);
    CertifiedReal dmin = has_int ? CertifiedReal(0, prec) : min_enclosure(dlo, dhi);
    CertifiedReal dmax = has_half ? half : max_enclosure(dlo, dhi);
    dmax = min_enclosure(dmax, half);
    dmin = max_enclosure(dmin, CertifiedReal(0, prec));
    return CertifiedReal::from_endpoints(dmin.inf(), dmax.sup(), x.precision());
}

UnitSpec unit_power(const FieldElement& base, long n) {
    return {base.pow(n), {n}, std::to_string(n)};
}

CertifiedReal liouville_kappa1(const FieldElement& alpha, unsigned precision_bits) {
    IntPoly minpoly = alpha.charpoly_scaled(); // DegenerateElement unless full degree
    const int d = alpha.field()->degree();
    CertifiedReal a0 = CertifiedReal::exact_int(minpoly.leading(), precision_bits);
    CertifiedReal house = alpha.house(precision_bits);
    CertifiedReal two(2, precision_bits), one(1, precision_bits);
    return one / (a0 * pow_int(two * house + one, d - 1));
}

ApproxRecord liouville_check(const FieldElement& alpha, const UnitSpec& eps, const Int& p,
                             const Int& q, unsigned precision_bits) {
    if (q <= 0) raise(ErrorKind::UsageError, "q must be positive");
    FieldElement twisted = eps.value * alpha;
    Rational pq = reduced(p, q);
    if (twisted == FieldElement::from_rational(alpha.field(), pq))
        raise(ErrorKind::ExactEquality, "eps*alpha equals p/q exactly");

    const int d = alpha.field()->degree();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    auto lhs_at = [&](unsigned prec) {
        return abs(twisted.identity_real(prec) - CertifiedReal::from_rational(pq, prec));
    };
    auto rhs_at = [&](unsigned prec) {
        CertifiedReal k1 = liouville_kappa1(alpha, prec);
        CertifiedReal he = eps.value.house(prec);
        CertifiedReal qd = pow_int(CertifiedReal::exact_int(pq.get_den(), prec), d);
        return k1 / (qd * pow_int(he, d - 1));
    };

    ApproxRecord rec;
    rec.unit_label = eps.label;
    rec.unit_exponents = eps.exponents;
    rec.p = pq.get_num();
    rec.q = pq.get_den();
    rec.lhs = lhs_at(precision_bits);
    rec.rhs = rhs_at(precision_bits);
    rec.quality = quality(alpha, eps.value, rec.p, rec.q, precision_bits);
    rec.verdict = invert(decide(lhs_at, rhs_at, true, precision_bits, ceiling));
    return rec;
}

ApproxRecord general_liouville(const FieldElement& gamma, const Int& p, const Int& q,
                               unsigned precision_bits) {
    if (q <= 0) raise(ErrorKind::UsageError, "q must be positive");
    Rational pq = reduced(p, q);
    if (gamma == FieldElement::from_rational(gamma.field(), pq))
        raise(ErrorKind::ExactEquality, "q*gamma equals p exactly");

    const long delta = gamma.element_degree();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    Int abs_p;
    mpz_abs(abs_p.get_mpz_t(), p.get_mpz_t());
    Int pplusq = abs_p + q;

    auto lhs_at = [&](unsigned prec) {
        CertifiedReal qv = CertifiedReal::exact_int(q, prec);
        CertifiedReal pv = CertifiedReal::exact_int(p, prec);
        return abs(qv * gamma.identity_real(prec) - pv);
    };
    auto rhs_at = [&](unsigned prec) {
        CertifiedReal base = pow_int(CertifiedReal::exact_int(pplusq, prec), delta - 1);
        CertifiedReal hfac = exp(CertifiedReal(delta, prec) * gamma.height(prec));
        return CertifiedReal(1, prec) / (base * hfac);
    };

    ApproxRecord rec;
    rec.unit_label = "1";
    rec.p = p;
    rec.q = q;
    rec.lhs = lhs_at(precision_bits);
    rec.rhs = rhs_at(precision_bits);
    rec.quality = rec.lhs; // untwisted; kept for the shared record schema
    rec.verdict = invert(decide(lhs_at, rhs_at, true, precision_bits, ceiling));
    return rec;
}

CertifiedReal quality(const FieldElement& alpha, const FieldElement& eps, const Int& p,
                      const Int& q, unsigned precision_bits) {
    if (q <= 0) raise(ErrorKind::UsageError, "q must be positive");
    FieldElement twisted = eps * alpha;
    Rational pq = reduced(p, q);
    if (twisted == FieldElement::from_rational(alpha.field(), pq))
        raise(ErrorKind::ExactEquality, "eps*alpha equals p/q exactly");
    const int d = alpha.field()->degree();
    CertifiedReal lhs = abs(twisted.identity_real(precision_bits) -
                            CertifiedReal::from_rational(pq, precision_bits));
    CertifiedReal qd = pow_int(CertifiedReal::exact_int(pq.get_den(), precision_bits), d);
    CertifiedReal he = eps.house(precision_bits);
    return qd * pow_int(he, d - 1) * lhs;
}

namespace {

// Candidate p/q per unit: convergents of eps*alpha with q <= q_max plus both
// neighbours p +- 1, or every q up to q_max in oracle mode.
std::vector<Rational> candidate_fractions(const FieldElement& twisted, const Int& q_max,
                                          bool exhaustive) {
    std::set<Rational> seen;
    auto add = [&](Rational r) {
        r.canonicalize();
        if (r.get_den() <= q_max) seen.insert(std::move(r));
    };

    if (exhaustive) {
        if (q_max > 200000)
            raise(ErrorKind::UsageError, "exhaustive q scan is limited to q_max <= 200000");
        long qm = static_cast<long>(q_max.get_si());
        for (long q = 1; q <= qm; ++q) {
            CertifiedReal v = refine_to_exp(
                [&](unsigned prec) {
                    return twisted.identity_real(prec) * CertifiedReal(q, prec);
                },
                -8);
            Int p;
            mpfr_get_z(p.get_mpz_t(), v.sup().center_raw(), MPFR_RNDN);
            for (long dp = -1; dp <= 1; ++dp) add(Rational(p + dp, q));
        }
    } else {
        RealTarget target = real_target(twisted);
        unsigned count = 16;
        for (;;) {
            ContinuedFraction cf = continued_fraction(target, count);
            bool past = cf.rational_termination;
            for (const auto& conv : cf.convergents)
                if (conv.get_den() > q_max) past = true;
            if (past || count >= 300) {
                for (const auto& conv : cf.convergents) {
                    add(conv);
                    add(Rational(conv.get_num() - 1, conv.get_den()));
                    add(Rational(conv.get_num() + 1, conv.get_den()));
                }
                break;
            }
            count *= 2;
        }
    }
    std::vector<Rational> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
        if (a.get_den() != b.get_den()) return a.get_den() < b.get_den();
        return a.get_num() < b.get_num();
    });
    return out;
}

} // namespace

std::vector<ApproxRecord> search_best(const FieldElement& alpha,
                                      const std::vector<UnitSpec>& units,
                                      const SearchOptions& opts) {
    std::vector<ApproxRecord> out;
    if (opts.q_max < 1) return out;
    const int d = alpha.field()->degree();
    const unsigned prec = opts.precision_bits;
    const unsigned ceiling = std::max(precision_ceiling(), prec);

    for (const auto& unit : units) {
        FieldElement twisted = unit.value * alpha;
        std::vector<ApproxRecord> unit_records;
        std::optional<size_t> min_index;
        for (const Rational& pq : candidate_fractions(twisted, opts.q_max, opts.exhaustive_q)) {
            if (twisted == FieldElement::from_rational(alpha.field(), pq)) continue;

            // Liouville safety net: a certified FAILS falsifies the
            // implementation, not the theorem, and must abort loudly.
            ApproxRecord safety = liouville_check(alpha, unit, pq.get_num(), pq.get_den(), prec);
            if (safety.verdict == Verdict::FAILS)
                raise(ErrorKind::CertifiedViolation,
                      "Liouville floor certifiably violated at p/q = " + rational_to_string(pq) +
                          ", unit " + unit.label);

            auto lhs_at = [&](unsigned pb) {
                return abs(twisted.identity_real(pb) - CertifiedReal::from_rational(pq, pb));
            };
            auto rhs_at = [&](unsigned pb) {
                CertifiedReal kap = CertifiedReal::from_rational(opts.kappa, pb);
                CertifiedReal qd = pow_int(CertifiedReal::exact_int(pq.get_den(), pb), d);
                return kap / (qd * pow_int(unit.value.house(pb), d - 1));
            };

            ApproxRecord rec;
            rec.unit_label = unit.label;
            rec.unit_exponents = unit.exponents;
            rec.p = pq.get_num();
            rec.q = pq.get_den();
            rec.lhs = lhs_at(prec);
            rec.rhs = rhs_at(prec);
            rec.quality = quality(alpha, unit.value, rec.p, rec.q, prec);
            rec.verdict = decide(lhs_at, rhs_at, true, prec, ceiling);
            unit_records.push_back(std::move(rec));

            size_t idx = unit_records.size() - 1;
            if (!min_index) {
                min_index = idx;
            } else {
                const CertifiedReal& cur = unit_records[*min_index].quality;
                Verdict v = certify_less(unit_records[idx].quality, cur);
                bool smaller = (v == Verdict::HOLDS);
                if (v == Verdict::UNDECIDED)
                    smaller =
                        mpfr_cmp(unit_records[idx].quality.center_raw(), cur.center_raw()) < 0;
                if (smaller) min_index = idx;
            }
        }
        if (min_index) unit_records[*min_index].is_minimum = true;
        for (auto& rec : unit_records)
            if (rec.verdict != Verdict::FAILS || rec.is_minimum) out.push_back(std::move(rec));
    }
    return out;
}

std::vector<ApproxRecord> liouville_scan(const FieldElement& alpha,
                                         const std::vector<UnitSpec>& units, const Int& q_max,
                                         unsigned precision_bits) {
    std::vector<ApproxRecord> out;
    for (const auto& unit : units) {
        FieldElement twisted = unit.value * alpha;
        RealTarget target = real_target(twisted);
        unsigned count = 16;
        ContinuedFraction cf;
        for (;;) {
            cf = continued_fraction(target, count);
            bool past = cf.rational_termination;
            if (!cf.convergents.empty() && cf.convergents.back().get_den() > q_max) past = true;
            if (past || count >= 300) break;
            count *= 2;
        }
        for (const auto& conv : cf.convergents) {
            if (conv.get_den() > q_max) break;
            out.push_back(
                liouville_check(alpha, unit, conv.get_num(), conv.get_den(), precision_bits));
        }
    }
    return out;
}

std::vector<HurwitzRecord> hurwitz_scan(const FieldElement& alpha, const FieldElement& eps0,
                                        long n, unsigned num_convergents,
                                        unsigned precision_bits) {
    const auto& field = alpha.field();
    if (field->degree() != 2 || field->real_embeddings() != 2)
        raise(ErrorKind::UsageError, "hurwitz witnesses need a real quadratic field");
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    if (decide([&](unsigned p) { return CertifiedReal(1, p); },
               [&](unsigned p) { return eps0.identity_real(p); }, true, precision_bits,
               ceiling) != Verdict::HOLDS)
        raise(ErrorKind::UsageError, "eps0 > 1 not certified");

    FieldElement target_elem = eps0.pow(n) * alpha;
    if (target_elem.is_rational())
        raise(ErrorKind::RationalTarget, "eps0^n * alpha is rational (the lemma's excepted n)");

    RealTarget target = real_target(target_elem);
    ContinuedFraction cf = continued_fraction(target, num_convergents);
    std::vector<HurwitzRecord> out;
    for (const auto& conv : cf.convergents) {
        auto lhs_at = [&](unsigned p) {
            return abs(target_elem.identity_real(p) - CertifiedReal::from_rational(conv, p));
        };
        auto rhs_at = [&](unsigned p) {
            CertifiedReal q2 = pow_int(CertifiedReal::exact_int(conv.get_den(), p), 2);
            return CertifiedReal(1, p) / (sqrt(CertifiedReal(5, p)) * q2);
        };
        HurwitzRecord rec;
        rec.p = conv.get_num();
        rec.q = conv.get_den();
        rec.lhs = lhs_at(precision_bits);
        rec.rhs = rhs_at(precision_bits);
        rec.verdict = decide(lhs_at, rhs_at, false, precision_bits, ceiling);
        rec.witness = (rec.verdict == Verdict::HOLDS);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<HurwitzRecord> hurwitz_witnesses(const FieldElement& alpha,
                                             const FieldElement& eps0, long n, unsigned count,
                                             unsigned precision_bits) {
    std::vector<HurwitzRecord> out;
    if (count == 0) return out;
    unsigned scan = std::max(8u, 4 * count);
    for (;;) {
        auto records = hurwitz_scan(alpha, eps0, n, scan, precision_bits);
        out.clear();
        for (auto& rec : records) {
            if (rec.witness) out.push_back(rec);
            if (out.size() == count) return out;
        }
        if (scan >= 16 * count + 64)
            raise(ErrorKind::PrecisionExhausted,
                  "not enough Hurwitz witnesses among " + std::to_string(scan) + " convergents");
        scan *= 2;
    }
}

PisotCertificate pseudo_pisot(const FieldElement& x, unsigned precision_bits) {
    if (x.is_zero()) raise(ErrorKind::ZeroElement, "pseudo-Pisot test on zero");
    PisotCertificate cert;
    cert.degree = x.element_degree();
    cert.trace = x.subfield_trace();
    cert.trace_integral = is_integer(cert.trace);

    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    if (cert.degree == 1) {
        // Rational: no other conjugates; |x| > 1 is exact.
        Rational v = x.rational_value();
        if (v < 0) v = -v;
        cert.identity_modulus_gt_one = v > 1;
        cert.others_modulus_lt_one = true;
        cert.is_pseudo_pisot =
            cert.identity_modulus_gt_one && cert.others_modulus_lt_one && cert.trace_integral;
        return cert;
    }

    IntPoly minpoly = x.minpoly_int();
    unsigned prec = std::max(precision_bits, 64u);
    for (;;) {
        IsolatedRoots roots = isolate_roots(minpoly, prec, ceiling);
        CertifiedComplex v = x.identity_value(prec);
        // sigma_Id(x) is a root of its minimal polynomial; locate its disc.
        int match = -1;
        bool ambiguous = false;
        for (size_t j = 0; j < roots.roots.size(); ++j) {
            CertifiedReal dist = (roots.roots[j] - v).abs();
            if (!dist.definitely_positive()) {
                if (match >= 0) ambiguous = true;
                match = static_cast<int>(j);
            }
        }
        if (match < 0 || ambiguous) {
            if (prec >= ceiling)
                raise(ErrorKind::PrecisionExhausted, "cannot match the identity conjugate");
            prec = std::min(prec * 2, ceiling);
            continue;
        }

        CertifiedReal one(1, prec);
        Verdict id_gt = certify_less(one, roots.roots[static_cast<size_t>(match)].abs());
        Verdict others_lt = Verdict::HOLDS;
        for (size_t j = 0; j < roots.roots.size(); ++j) {
            if (static_cast<int>(j) == match) continue;
            Verdict v_lt = certify_less(roots.roots[j].abs(), one);
            if (v_lt == Verdict::FAILS) {
                others_lt = Verdict::FAILS;
                break;
            }
            if (v_lt == Verdict::UNDECIDED) others_lt = Verdict::UNDECIDED;
        }
        if (id_gt != Verdict::UNDECIDED && others_lt != Verdict::UNDECIDED) {
            cert.identity_modulus_gt_one = (id_gt == Verdict::HOLDS);
            cert.others_modulus_lt_one = (others_lt == Verdict::HOLDS);
            cert.is_pseudo_pisot = cert.identity_modulus_gt_one &&
                                   cert.others_modulus_lt_one && cert.trace_integral;
            return cert;
        }
        if (prec >= ceiling)
            raise(ErrorKind::PrecisionExhausted, "conjugate modulus comparison undecided");
        prec = std::min(prec * 2, ceiling);
    }
}

CzRecord cz_check(const FieldElement& alpha, const Int& q, const FieldElement& eps,
                  const Rational& eta, unsigned precision_bits) {
    if (q <= 0) raise(ErrorKind::UsageError, "q must be positive");
    if (eta <= 0) raise(ErrorKind::UsageError, "eta must be positive");
    FieldElement xi = (alpha * eps).scale(Rational(q));
    const int d = alpha.field()->degree();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);

    CzRecord rec;
    rec.q = q;
    rec.delta = eps.element_degree();
    rec.exact_integer = xi.is_rational() && is_integer(xi.rational_value());

    if (xi.is_rational()) {
        Rational v = xi.rational_value();
        if (v < 0) v = -v;
        rec.abs_gt_one = v > 1;
    } else {
        Verdict v = decide([&](unsigned p) { return CertifiedReal(1, p); },
                           [&](unsigned p) { return xi.identity_value(p).abs(); }, true,
                           precision_bits, ceiling);
        if (v == Verdict::UNDECIDED)
            raise(ErrorKind::PrecisionExhausted, "|alpha q eps| comparison undecided");
        rec.abs_gt_one = (v == Verdict::HOLDS);
    }
    rec.pisot = pseudo_pisot(xi, precision_bits).is_pseudo_pisot;
    rec.applies = rec.abs_gt_one && !rec.pisot && !rec.exact_integer;

    auto lhs_at = [&](unsigned p) {
        CertifiedReal v = xi.identity_real(std::max(p, 64u));
        return nearest_int_distance(v);
    };
    auto rhs_at = [&](unsigned p) {
        CertifiedReal eta_ball = CertifiedReal::from_rational(eta, p);
        CertifiedReal he = eps.house(p);
        CertifiedReal qb = CertifiedReal::exact_int(q, p);
        CertifiedReal dpe = CertifiedReal(d, p) + eta_ball;
        return CertifiedReal(1, p) / (pow(he, eta_ball) * pow(qb, dpe));
    };
    if (rec.exact_integer) {
        rec.lhs = CertifiedReal(0, precision_bits);
        rec.rhs = rhs_at(precision_bits);
        rec.verdict = Verdict::FAILS; // ||.|| = 0, excluded by the "0 <" hypothesis
    } else {
        unsigned p = std::max(precision_bits, 64u);
        for (;;) {
            try {
                rec.lhs = lhs_at(p);
                break;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PrecisionExhausted || p >= ceiling) throw;
                p = std::min(p * 2, ceiling);
            }
        }
        rec.rhs = rhs_at(precision_bits);
        rec.verdict = invert(decide(lhs_at, rhs_at, true, precision_bits, ceiling));
    }
    return rec;
}

} // namespace utl
