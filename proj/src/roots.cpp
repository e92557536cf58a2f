#include "pexp/roots.hpp"
#include "pexp/config.hpp"
#include "pexp/error.hpp"

#include <algorithm>
#include <numeric>

namespace pexp {

namespace {

/* complex number on raw mpfr pairs, fixed precision, RNDN throughout;
 * only used for the (non-certified) Aberth approximation phase */
struct CX {
    mpfr_t re, im;
    explicit CX(long prec) {
        mpfr_init2(re, prec);
        mpfr_init2(im, prec);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    CX(const CX& o) {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    CX& operator=(const CX& o) {
        if (this != &o) {
            mpfr_set_prec(re, mpfr_get_prec(o.re));
            mpfr_set_prec(im, mpfr_get_prec(o.im));
            mpfr_set(re, o.re, MPFR_RNDN);
            mpfr_set(im, o.im, MPFR_RNDN);
        }
        return *this;
    }
    ~CX() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

void cx_add(CX& r, const CX& a, const CX& b) {
    mpfr_add(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_add(r.im, a.im, b.im, MPFR_RNDN);
}

void cx_sub(CX& r, const CX& a, const CX& b) {
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}

void cx_mul(CX& r, const CX& a, const CX& b, mpfr_t t1, mpfr_t t2) {
    // r may not alias a or b
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_sub(r.re, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_add(r.im, t1, t2, MPFR_RNDN);
}

void cx_div(CX& r, const CX& a, const CX& b, mpfr_t t1, mpfr_t t2, mpfr_t t3) {
    // r may not alias a or b
    mpfr_mul(t1, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, b.im, b.im, MPFR_RNDN);
    mpfr_add(t3, t1, t2, MPFR_RNDN);  // |b|^2
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.re, t1, t3, MPFR_RNDN);
    mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.im, t1, t3, MPFR_RNDN);
}

/* non-certified simultaneous root refinement (Aberth-Ehrlich) */
void aberth(const IntPolynomial& p, std::vector<CX>& z, long prec, int iters) {
    int n = p.degree();
    IntPolynomial dp = p.derivative();
    mpfr_t t1, t2, t3;
    mpfr_init2(t1, prec);
    mpfr_init2(t2, prec);
    mpfr_init2(t3, prec);
    CX pv(prec), dv(prec), nk(prec), sum(prec), term(prec), tmp(prec), w(prec), den(prec);
    for (int it = 0; it < iters; ++it) {
        bool all_tiny = true;
        for (int k = 0; k < n; ++k) {
            // evaluate p and p' at z_k (Horner)
            mpfr_set_zero(pv.re, 1);
            mpfr_set_zero(pv.im, 1);
            for (int i = p.degree(); i >= 0; --i) {
                cx_mul(tmp, pv, z[static_cast<size_t>(k)], t1, t2);
                mpfr_add_z(tmp.re, tmp.re, p.c[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
                pv = tmp;
            }
            mpfr_set_zero(dv.re, 1);
            mpfr_set_zero(dv.im, 1);
            for (int i = dp.degree(); i >= 0; --i) {
                cx_mul(tmp, dv, z[static_cast<size_t>(k)], t1, t2);
                mpfr_add_z(tmp.re, tmp.re, dp.c[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
                dv = tmp;
            }
            if (mpfr_zero_p(dv.re) && mpfr_zero_p(dv.im)) continue;
            cx_div(nk, pv, dv, t1, t2, t3);  // Newton correction
            // Aberth correction: w = nk / (1 - nk * sum_{j!=k} 1/(z_k - z_j))
            mpfr_set_zero(sum.re, 1);
            mpfr_set_zero(sum.im, 1);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                cx_sub(tmp, z[static_cast<size_t>(k)], z[static_cast<size_t>(j)]);
                if (mpfr_zero_p(tmp.re) && mpfr_zero_p(tmp.im)) continue;
                CX one(prec);
                mpfr_set_ui(one.re, 1, MPFR_RNDN);
                cx_div(term, one, tmp, t1, t2, t3);
                cx_add(sum, sum, term);
            }
            cx_mul(tmp, nk, sum, t1, t2);
            mpfr_ui_sub(den.re, 1, tmp.re, MPFR_RNDN);
            mpfr_neg(den.im, tmp.im, MPFR_RNDN);
            if (mpfr_zero_p(den.re) && mpfr_zero_p(den.im)) {
                w = nk;
            } else {
                cx_div(w, nk, den, t1, t2, t3);
            }
            cx_sub(z[static_cast<size_t>(k)], z[static_cast<size_t>(k)], w);
            // convergence: |w| relative to |z| + 1
            mpfr_hypot(t1, w.re, w.im, MPFR_RNDN);
            mpfr_hypot(t2, z[static_cast<size_t>(k)].re, z[static_cast<size_t>(k)].im, MPFR_RNDN);
            mpfr_add_ui(t2, t2, 1, MPFR_RNDN);
            mpfr_mul_2si(t2, t2, -(prec - 8), MPFR_RNDN);
            if (mpfr_cmp(t1, t2) > 0) all_tiny = false;
        }
        if (all_tiny) break;
    }
    mpfr_clear(t1);
    mpfr_clear(t2);
    mpfr_clear(t3);
}

/* certified inclusion disk around an approximation: |z - root| <= n |p(z)/p'(z)|
 * for at least one root (requires the p' ball to exclude 0) */
bool inclusion_disk(const IntPolynomial& p, const IntPolynomial& dp, const CX& z,
                    long prec, ComplexBall& out) {
    Real re(prec), im(prec);
    mpfr_set(re.get(), z.re, MPFR_RNDN);
    mpfr_set(im.get(), z.im, MPFR_RNDN);
    Real zero_rad(RealBall::RAD_PREC);
    mpfr_set_zero(zero_rad.get(), 1);
    ComplexBall zb = ComplexBall::from_parts(re, im, zero_rad);
    ComplexBall pv = p.eval_ball(zb);
    ComplexBall dv = dp.eval_ball(zb);
    if (dv.contains_zero()) return false;
    Real num = pv.abs_ub();
    Real den = dv.abs_lb();
    Real rad(RealBall::RAD_PREC);
    mpfr_div(rad.get(), num.get(), den.get(), MPFR_RNDU);
    mpfr_mul_ui(rad.get(), rad.get(), static_cast<unsigned long>(p.degree()), MPFR_RNDU);
    out = ComplexBall::from_parts(re, im, rad);
    return true;
}

} // namespace

std::vector<RootBall> isolate_roots(const IntPolynomial& squarefree) {
    const IntPolynomial& p = squarefree;
    int n = p.degree();
    if (n <= 0) return {};
    IntPolynomial dp = p.derivative();

    // Cauchy bound 1 + max |c_i| / |lc|
    mpq_class cb = 0;
    for (int i = 0; i < n; ++i) {
        mpq_class t = abs(mpq_class(p.coeff(i)) / mpq_class(p.lc()));
        if (t > cb) cb = t;
    }
    cb += 1;

    long prec = config().start_prec;
    std::vector<CX> z;
    bool warm = false;
    while (true) {
        if (!warm) {
            z.assign(static_cast<size_t>(n), CX(prec));
            // initial points on a circle of radius ~cb with deliberately
            // asymmetric angles (breaks conjugate-symmetric stalls)
            RealBall pi = rb_pi(prec);
            for (int k = 0; k < n; ++k) {
                mpq_class ang(2 * k + 1, n);
                ang += mpq_class((k * k) % 97, 977L * n);
                mpq_class rk = cb * mpq_class(100 * n + k, 100 * n);
                mpfr_t th;
                mpfr_init2(th, prec);
                mpfr_mul_q(th, pi.mid().get(), ang.get_mpq_t(), MPFR_RNDN);
                mpfr_t s, c;
                mpfr_init2(s, prec);
                mpfr_init2(c, prec);
                mpfr_sin_cos(s, c, th, MPFR_RNDN);
                mpfr_mul_q(z[static_cast<size_t>(k)].re, c, rk.get_mpq_t(), MPFR_RNDN);
                mpfr_mul_q(z[static_cast<size_t>(k)].im, s, rk.get_mpq_t(), MPFR_RNDN);
                mpfr_clear(th);
                mpfr_clear(s);
                mpfr_clear(c);
            }
        } else {
            // re-run at higher precision from previous approximations
            std::vector<CX> z2;
            z2.reserve(z.size());
            for (auto& v : z) {
                CX w(prec);
                mpfr_set(w.re, v.re, MPFR_RNDN);
                mpfr_set(w.im, v.im, MPFR_RNDN);
                z2.push_back(w);
            }
            z = std::move(z2);
        }
        aberth(p, z, prec, 50 + 2 * n);

        // certification
        std::vector<ComplexBall> disks(static_cast<size_t>(n));
        bool ok = true;
        for (int k = 0; k < n && ok; ++k)
            ok = inclusion_disk(p, dp, z[static_cast<size_t>(k)], prec, disks[static_cast<size_t>(k)]);
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                ok = disks[static_cast<size_t>(i)].separated_from(disks[static_cast<size_t>(j)]);
        // conjugate pairing must be unambiguous
        std::vector<int> pair(static_cast<size_t>(n), -1);
        if (ok) {
            for (int k = 0; k < n && ok; ++k) {
                ComplexBall cj = cb_conj(disks[static_cast<size_t>(k)]);
                int hit = -1;
                for (int j = 0; j < n; ++j) {
                    if (cj.overlaps(disks[static_cast<size_t>(j)])) {
                        if (hit >= 0) {
                            ok = false;
                            break;
                        }
                        hit = j;
                    }
                }
                if (hit < 0) ok = false;
                pair[static_cast<size_t>(k)] = hit;
            }
        }
        // imaginary sign must be certain for non-real roots
        if (ok) {
            for (int k = 0; k < n && ok; ++k) {
                if (pair[static_cast<size_t>(k)] != k &&
                    disks[static_cast<size_t>(k)].imag_ball().sign() == 0)
                    ok = false;
            }
        }
        if (ok) {
            std::vector<RootBall> out(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                out[static_cast<size_t>(k)].ball = disks[static_cast<size_t>(k)];
                out[static_cast<size_t>(k)].real = (pair[static_cast<size_t>(k)] == k);
                out[static_cast<size_t>(k)].conj_index = pair[static_cast<size_t>(k)];
            }
            // canonical order: ascending Re; conjugates tie-broken Im<0 first.
            // Unrelated roots with overlapping Re balls force another round.
            std::vector<int> idx(static_cast<size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            bool order_ok = true;
            std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                if (a == b) return false;
                const RootBall &ra = out[static_cast<size_t>(a)], &rb = out[static_cast<size_t>(b)];
                RealBall rea = ra.ball.real_ball(), reb = rb.ball.real_ball();
                if (rea.certainly_lt(reb)) return true;
                if (reb.certainly_lt(rea)) return false;
                if (ra.conj_index == b) {
                    // conjugate pair: real parts are exactly equal; Im < 0 first
                    return ra.ball.imag_ball().sign() < 0;
                }
                // unrelated roots with unresolved real parts: refine more
                order_ok = false;
                return a < b;
            });
            if (order_ok) {
                std::vector<RootBall> sorted;
                std::vector<int> inv(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) inv[static_cast<size_t>(idx[static_cast<size_t>(i)])] = i;
                for (int i = 0; i < n; ++i) {
                    RootBall rb = out[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                    rb.conj_index = inv[static_cast<size_t>(rb.conj_index)];
                    sorted.push_back(rb);
                }
                return sorted;
            }
        }
        warm = true;
        prec *= 2;
        if (prec > config().max_prec) throw PrecisionExhausted(prec / 2);
    }
}

ComplexBall refine_root(const IntPolynomial& poly, const ComplexBall& isolating,
                        long rad_exp2) {
    IntPolynomial dp = poly.derivative();
    // already small enough?
    {
        mpq_class r = isolating.rad().to_mpq();
        mpq_class target = mpq_class(1);
        if (rad_exp2 >= 0)
            target = mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2));
        else
            target = mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
        if (r <= target) return isolating;
    }
    long prec = std::max<long>(config().start_prec, -rad_exp2 + 32);
    CX z(prec);
    mpfr_set(z.re, isolating.re().get(), MPFR_RNDN);
    mpfr_set(z.im, isolating.im().get(), MPFR_RNDN);
    while (prec <= config().max_prec) {
        // Newton iterations at this precision
        mpfr_t t1, t2, t3;
        mpfr_init2(t1, prec);
        mpfr_init2(t2, prec);
        mpfr_init2(t3, prec);
        CX pv(prec), dv(prec), tmp(prec), corr(prec);
        for (int it = 0; it < 64; ++it) {
            mpfr_set_zero(pv.re, 1);
            mpfr_set_zero(pv.im, 1);
            for (int i = poly.degree(); i >= 0; --i) {
                cx_mul(tmp, pv, z, t1, t2);
                mpfr_add_z(tmp.re, tmp.re, poly.c[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
                pv = tmp;
            }
            mpfr_set_zero(dv.re, 1);
            mpfr_set_zero(dv.im, 1);
            for (int i = dp.degree(); i >= 0; --i) {
                cx_mul(tmp, dv, z, t1, t2);
                mpfr_add_z(tmp.re, tmp.re, dp.c[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
                dv = tmp;
            }
            if (mpfr_zero_p(dv.re) && mpfr_zero_p(dv.im)) break;
            cx_div(corr, pv, dv, t1, t2, t3);
            cx_sub(z, z, corr);
            mpfr_hypot(t1, corr.re, corr.im, MPFR_RNDN);
            mpfr_hypot(t2, z.re, z.im, MPFR_RNDN);
            mpfr_add_ui(t2, t2, 1, MPFR_RNDN);
            mpfr_mul_2si(t2, t2, -(prec - 4), MPFR_RNDN);
            if (mpfr_cmp(t1, t2) <= 0) break;
        }
        mpfr_clear(t1);
        mpfr_clear(t2);
        mpfr_clear(t3);
        ComplexBall cand;
        bool wandered = false;
        if (inclusion_disk(poly, dp, z, prec, cand)) {
            mpq_class r = cand.rad().to_mpq();
            mpq_class target = rad_exp2 >= 0
                                   ? mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2))
                                   : mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
            // the inclusion disk certifies *some* root; containment in the
            // input isolating disk pins it to the same one
            if (r <= target && isolating.contains(cand)) return cand;
            if (cand.separated_from(isolating)) wandered = true;
        }
        prec *= 2;
        // re-seed at the new precision (from the original center if Newton
        // converged to a different root)
        CX z2(prec);
        mpfr_set(z2.re, wandered ? isolating.re().get() : z.re, MPFR_RNDN);
        mpfr_set(z2.im, wandered ? isolating.im().get() : z.im, MPFR_RNDN);
        z = z2;
    }
    throw PrecisionExhausted(config().max_prec);
}

bool verify_isolating(const IntPolynomial& poly, const ComplexBall& ball) {
    auto roots = isolate_roots(squarefree_part(poly));
    int inside = 0;
    for (auto& r : roots) {
        ComplexBall d = r.ball;
        // refine until the root disk is inside or outside the query ball
        long guard = 0;
        while (!ball.contains(d) && ball.overlaps(d)) {
            mpq_class rq = d.rad().to_mpq();
            long e = -64;
            if (rq > 0) {
                // shrink by a factor of 2^16 each round
                mpz_class num = rq.get_num(), den = rq.get_den();
                e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 16;
            }
            d = refine_root(poly, d, e);
            if (++guard > 20) return false;
        }
        if (ball.contains(d)) ++inside;
    }
    return inside == 1;
}

} // namespace pexp
