#include "utl/units.hpp"

#include <algorithm>

#include "utl/approx.hpp"
#include "utl/error.hpp"

namespace utl {

namespace {

// Determinant of a small interval matrix, recursive expansion.
CertifiedReal interval_det(const std::vector<std::vector<CertifiedReal>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    CertifiedReal acc(0, m[0][0].precision());
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<CertifiedReal>> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            std::vector<CertifiedReal> row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        CertifiedReal term = m[0][j] * interval_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

std::vector<std::vector<CertifiedReal>> log_matrix_rows(const std::vector<FieldElement>& units,
                                                        const std::vector<unsigned>& rows,
                                                        unsigned prec) {
    std::vector<std::vector<CertifiedReal>> m;
    std::vector<std::vector<CertifiedReal>> full;
    full.reserve(units.size());
    for (const auto& u : units) full.push_back(log_embedding(u, prec));
    m.reserve(rows.size());
    for (unsigned row : rows) {
        std::vector<CertifiedReal> r;
        r.reserve(units.size());
        for (size_t i = 0; i < units.size(); ++i) r.push_back(full[i][row]);
        m.push_back(std::move(r));
    }
    return m;
}

void subsets_of(unsigned n, unsigned k, unsigned start, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (unsigned i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_of(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

bool is_unit(const FieldElement& x) {
    if (x.is_zero()) return false;
    if (!x.is_algebraic_integer()) return false;
    Rational n = x.norm();
    return n == 1 || n == -1;
}

std::vector<CertifiedReal> log_embedding(const FieldElement& x, unsigned precision_bits) {
    if (x.is_zero()) raise(ErrorKind::ZeroElement, "log embedding of zero");
    const unsigned rows = x.field()->real_embeddings() + x.field()->complex_pairs();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    std::vector<CertifiedReal> out;
    out.reserve(rows);
    for (unsigned j = 0; j < rows; ++j) {
        unsigned prec = precision_bits;
        for (;;) {
            try {
                out.push_back(log(x.embed(j, prec).abs()));
                break;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DomainError || prec >= ceiling) throw;
                prec = std::min(prec * 2, ceiling);
            }
        }
    }
    return out;
}

UnitBasis::UnitBasis(FieldPtr field, std::vector<FieldElement> units, unsigned precision_bits)
    : field_(std::move(field)), units_(std::move(units)) {
    if (units_.empty())
        raise(ErrorKind::UsageError, "unit basis needs rank >= 1 (rank-0 fields rejected)");
    if (units_.size() != field_->unit_rank())
        raise(ErrorKind::UsageError,
              "expected " + std::to_string(field_->unit_rank()) + " independent units, got " +
                  std::to_string(units_.size()));
    for (const auto& u : units_) {
        if (!u.field()->same_field(*field_))
            raise(ErrorKind::FieldMismatch, "basis unit from a different field");
        if (!is_unit(u)) raise(ErrorKind::NotAUnit, "basis element is not a unit: " + u.to_string());
    }

    // Pick the r-row subset of the (r1+r2) log rows with the largest certified
    // determinant ("the regulator of K does not vanish").
    const unsigned rows = field_->real_embeddings() + field_->complex_pairs();
    const unsigned r = static_cast<unsigned>(units_.size());
    std::vector<std::vector<unsigned>> subsets;
    std::vector<unsigned> cur;
    subsets_of(rows, r, 0, cur, subsets);

    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    unsigned prec = precision_bits;
    for (;;) {
        std::optional<std::vector<unsigned>> best;
        CertifiedReal best_mig;
        for (const auto& subset : subsets) {
            CertifiedReal det = interval_det(log_matrix_rows(units_, subset, prec));
            CertifiedReal mig = det.mignitude();
            if (mpfr_sgn(mig.center_raw()) > 0) {
                if (!best || mpfr_cmp(mig.center_raw(), best_mig.center_raw()) > 0) {
                    best = subset;
                    best_mig = mig;
                }
            }
        }
        if (best) {
            rows_ = *best;
            return;
        }
        if (prec >= ceiling)
            raise(ErrorKind::SingularSystem,
                  "no log-matrix row subset has a certified nonzero determinant "
                  "(units multiplicatively dependent?)");
        prec = std::min(prec * 2, ceiling);
    }
}

std::vector<std::vector<CertifiedReal>> UnitBasis::selected_matrix(unsigned precision_bits) const {
    return log_matrix_rows(units_, rows_, precision_bits);
}

ExponentVector recover_exponents(const FieldElement& x, const UnitBasis& basis,
                                 unsigned precision_bits) {
    if (!is_unit(x)) raise(ErrorKind::NotAUnit, "exponent recovery on a non-unit");
    const unsigned r = basis.rank();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    unsigned prec = std::max(precision_bits, 64u);

    std::vector<Int> exps;
    for (;;) {
        auto m = basis.selected_matrix(prec);
        std::vector<CertifiedReal> v;
        {
            auto lambda = log_embedding(x, prec);
            v.reserve(r);
            for (unsigned row : basis.selected_rows()) v.push_back(lambda[row]);
        }
        CertifiedReal det = interval_det(m);
        bool solved = true;
        exps.clear();
        try {
            for (unsigned i = 0; i < r && solved; ++i) {
                auto mi = m;
                for (unsigned j = 0; j < r; ++j) mi[j][i] = v[j];
                CertifiedReal bi = interval_det(mi) / det;
                auto n = bi.unique_integer();
                if (!n) {
                    solved = false;
                    break;
                }
                exps.push_back(*n);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DomainError && e.kind() != ErrorKind::DivisionByZero) throw;
            solved = false;
        }
        if (solved) break;
        if (prec >= ceiling)
            raise(ErrorKind::PrecisionExhausted, "Cramer solution not certified integral");
        prec = std::min(prec * 2, ceiling);
    }

    // Exact verification: the residual must be a root of unity.
    FieldElement residual = x;
    for (unsigned i = 0; i < r; ++i) {
        long e = static_cast<long>(exps[i].get_si());
        residual = residual * basis.units()[i].pow(-e);
    }
    Int bound = basis.field()->torsion_exponent_bound();
    FieldElement power = residual.pow(static_cast<long>(bound.get_si()));
    if (!(power == FieldElement::one(basis.field())))
        raise(ErrorKind::TorsionCheckFailed,
              "residual " + residual.to_string() + " is not a root of unity (unit outside the "
              "basis span?)");

    ExponentVector out;
    out.exponents = std::move(exps);
    out.torsion_ok = true;
    out.torsion_text = residual.to_string();
    if (residual.is_rational()) out.torsion_rational = residual.rational_value();
    return out;
}

CertifiedReal kappa8(const UnitBasis& basis, unsigned precision_bits) {
    const unsigned r = basis.rank();
    const int d = basis.field()->degree();
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);
    unsigned prec = std::max(precision_bits, 64u);
    for (;;) {
        try {
            auto m = basis.selected_matrix(prec);
            CertifiedReal det = interval_det(m);
            // ||M^-1||_inf via Cramer columns of the inverse.
            CertifiedReal norm(0, prec);
            for (unsigned i = 0; i < r; ++i) {
                CertifiedReal row_sum(0, prec);
                for (unsigned j = 0; j < r; ++j) {
                    // inverse entry (i, j): cofactor expansion via replacement
                    auto mi = m;
                    for (unsigned k = 0; k < r; ++k)
                        mi[k][i] = CertifiedReal(k == j ? 1 : 0, prec);
                    row_sum = row_sum + abs(interval_det(mi) / det);
                }
                norm = max_enclosure(norm, row_sum);
            }
            // Row bound: |log|sigma_j(eps)|| <= max(1, (d-w_j)/w_j) log house(eps).
            long factor = 1;
            for (unsigned row : basis.selected_rows()) {
                long w = basis.field()->log_row_weight(row);
                factor = std::max(factor, (static_cast<long>(d) - w) / w);
            }
            return CertifiedReal(factor, prec) * norm;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DomainError && e.kind() != ErrorKind::DivisionByZero) throw;
            if (prec >= ceiling)
                raise(ErrorKind::SingularSystem, "determinant enclosure contains 0 at max bits");
            prec = std::min(prec * 2, ceiling);
        }
    }
}

CubicFamily cubic_family(long D) {
    if (D <= 1) raise(ErrorKind::UsageError, "cubic family needs D > 1");
    Int D3 = Int(D) * D * D;
    auto field = NumberField::create({Int(1), Int(0), Int(0), -(D3 - 1)});
    FieldElement eps0(field, {Rational(Int(D) * D), Rational(D), Rational(1)});
    if (!is_unit(eps0)) raise(ErrorKind::CertifiedViolation, "family unit check failed");
    // exact identity (D - w) * eps0 = 1
    FieldElement dw = FieldElement::from_rational(field, Rational(D)) - FieldElement::generator(field);
    if (!(dw * eps0 == FieldElement::one(field)))
        raise(ErrorKind::CertifiedViolation, "(D - w) * eps0 != 1");
    // eps0 > 1 and both complex conjugates inside the unit circle
    unsigned prec = kDefaultPrecision;
    if (certify_less(CertifiedReal(1, prec), eps0.identity_real(prec)) != Verdict::HOLDS ||
        certify_less(eps0.embed(1, prec).abs(), CertifiedReal(1, prec)) != Verdict::HOLDS)
        raise(ErrorKind::CertifiedViolation, "cubic family certification failed");
    return {field, eps0};
}

BiquadraticFamily biquadratic_family(long D) {
    if (D <= 1) raise(ErrorKind::UsageError, "biquadratic family needs D > 1");
    Int D2 = Int(D) * D;
    Int D3 = D2 * D;
    Int D4 = D3 * D;
    auto field = NumberField::create({Int(1), Int(0), Int(0), Int(0), -(D4 - 1)});
    FieldElement eps1(field, {Rational(D2), Rational(0), Rational(1)});
    FieldElement eps2(field, {Rational(D3), Rational(D2), Rational(D), Rational(1)});
    if (!is_unit(eps1) || !is_unit(eps2))
        raise(ErrorKind::CertifiedViolation, "family unit check failed");
    FieldElement w = FieldElement::generator(field);
    FieldElement dv = FieldElement::from_rational(field, Rational(D)) - w;
    FieldElement d2v = FieldElement::from_rational(field, Rational(Int(D) * D)) - w * w;
    if (!(dv * eps2 == FieldElement::one(field)) || !(d2v * eps1 == FieldElement::one(field)))
        raise(ErrorKind::CertifiedViolation, "biquadratic family identities failed");
    unsigned prec = kDefaultPrecision;
    if (certify_less(CertifiedReal(1, prec), eps1.identity_real(prec)) != Verdict::HOLDS ||
        certify_less(CertifiedReal(1, prec), eps2.identity_real(prec)) != Verdict::HOLDS)
        raise(ErrorKind::CertifiedViolation, "family units not > 1");
    // Multiplicative independence via a certified nonzero 2x2 log determinant.
    UnitBasis check(field, {eps1, eps2});
    (void)check;
    return {field, eps1, eps2};
}

BoundedUnitSequence bounded_unit_sequence(const FieldElement& eps1, const FieldElement& eps2,
                                          unsigned count, unsigned precision_bits) {
    BoundedUnitSequence out;
    if (count == 0) return out;
    const auto& field = eps1.field();
    if (!field->same_field(*eps2.field()))
        raise(ErrorKind::FieldMismatch, "units from different fields");
    const unsigned ceiling = std::max(precision_ceiling(), precision_bits);

    auto gt = [&](const FieldElement& a, const CertifiedReal& bound, unsigned p) {
        return certify_less(bound, a.identity_real(p));
    };
    unsigned prec = std::max(precision_bits, 64u);
    if (gt(eps1, CertifiedReal(1, prec), prec) != Verdict::HOLDS ||
        certify_less(eps1.identity_real(prec), eps2.identity_real(prec)) != Verdict::HOLDS)
        raise(ErrorKind::UsageError, "need eps2 > eps1 > 1 certified");

    // Multiplicative independence: some 2x2 minor of the log matrix is
    // certifiably nonzero; dependent units never certify and hit the ceiling.
    {
        bool independent = false;
        unsigned p = prec;
        while (!independent) {
            auto l1 = log_embedding(eps1, p);
            auto l2 = log_embedding(eps2, p);
            for (size_t i = 0; i < l1.size() && !independent; ++i)
                for (size_t j = i + 1; j < l1.size() && !independent; ++j) {
                    CertifiedReal det = l1[i] * l2[j] - l1[j] * l2[i];
                    if (!det.contains_zero()) independent = true;
                }
            if (independent) break;
            if (p >= ceiling)
                raise(ErrorKind::DependentUnits,
                      "no certified nonzero log minor (multiplicatively dependent?)");
            p = std::min(p * 2, ceiling);
        }
    }

    // Convergents of (log eps2)/(log eps1); a/b pairs with eps_n = eps1^a eps2^-b.
    RealTarget ratio;
    {
        FieldElement e1 = eps1, e2 = eps2;
        ratio.producer = [e1, e2](unsigned p) {
            return log(e2.identity_real(p)) / log(e1.identity_real(p));
        };
    }
    unsigned want = count + 4;
    for (;;) {
        ContinuedFraction cf = continued_fraction(ratio, want);
        out.accepted.clear();
        out.skipped.clear();
        for (const auto& conv : cf.convergents) {
            Int a = conv.get_num(), b = conv.get_den();
            auto log_at = [&](unsigned p) {
                return CertifiedReal::exact_int(a, p) * log(eps1.identity_real(p)) -
                       CertifiedReal::exact_int(b, p) * log(eps2.identity_real(p));
            };
            unsigned p = prec;
            Verdict in_window = Verdict::UNDECIDED;
            CertifiedReal lv;
            for (;;) {
                lv = log_at(p);
                CertifiedReal log2 = log(CertifiedReal(2, p));
                in_window = certify_less_equal(abs(lv), log2);
                if (in_window != Verdict::UNDECIDED || p >= ceiling) break;
                p = std::min(p * 2, ceiling);
            }
            BoundedUnitTerm term{a, b,
                                 eps1.pow(static_cast<long>(a.get_si())) *
                                     eps2.pow(-static_cast<long>(b.get_si())),
                                 lv, in_window == Verdict::HOLDS};
            if (term.accepted) {
                out.accepted.push_back(std::move(term));
                if (out.accepted.size() == count) return out;
            } else {
                out.skipped.push_back(std::move(term));
            }
        }
        if (want >= 16 * count + 64)
            raise(ErrorKind::PrecisionExhausted,
                  "window acceptance too sparse among " + std::to_string(want) + " convergents");
        want *= 2;
    }
}

} // namespace utl
