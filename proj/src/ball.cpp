#include "pexp/ball.hpp"
#include "pexp/error.hpp"

#include <sstream>

namespace pexp {

/* ---------------- Real ---------------- */

mpq_class Real::to_mpq() const {
    mpq_class q;
    if (mpfr_zero_p(v_)) return q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::pair<mpz_class, long> Real::to_dyadic() const {
    if (mpfr_zero_p(v_)) return {mpz_class(0), 0};
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    return {m, static_cast<long>(e)};
}

Real Real::from_dyadic(const mpz_class& mantissa, long exp) {
    size_t bits = mpz_sizeinbase(mantissa.get_mpz_t(), 2);
    Real r(static_cast<long>(bits) + 2);
    mpfr_set_z_2exp(r.get(), mantissa.get_mpz_t(), exp, MPFR_RNDN);
    return r;
}

/* rad += one ulp of x (safe overestimate of a half-ulp rounding error) */
static void bump_rad_ulp(mpfr_ptr rad, mpfr_srcptr x) {
    if (!mpfr_regular_p(x)) return;
    mpfr_exp_t e = mpfr_get_exp(x) - mpfr_get_prec(x);
    mpfr_t ulp;
    mpfr_init2(ulp, 8);
    mpfr_set_ui_2exp(ulp, 1, e, MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

/* ---------------- RealBall ---------------- */

RealBall RealBall::exact_si(long v, long prec) {
    RealBall b(prec);
    mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
    mpfr_set_zero(b.rad_.get(), 1);
    return b;
}

RealBall RealBall::exact_mpz(const mpz_class& v, long prec) {
    RealBall b(prec);
    int t = mpfr_set_z(b.mid_.get(), v.get_mpz_t(), MPFR_RNDN);
    mpfr_set_zero(b.rad_.get(), 1);
    if (t != 0) bump_rad_ulp(b.rad_.get(), b.mid_.get());
    return b;
}

RealBall RealBall::from_mpq(const mpq_class& q, long prec) {
    RealBall b(prec);
    int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_set_zero(b.rad_.get(), 1);
    if (t != 0) bump_rad_ulp(b.rad_.get(), b.mid_.get());
    return b;
}

RealBall RealBall::from_midrad(const Real& mid, const Real& rad) {
    RealBall b(mid.prec());
    b.mid_ = mid;
    mpfr_set(b.rad_.get(), rad.get(), MPFR_RNDU);
    mpfr_abs(b.rad_.get(), b.rad_.get(), MPFR_RNDU);
    return b;
}

bool RealBall::contains_zero() const {
    mpq_class m = mid_.to_mpq(), r = rad_.to_mpq();
    return abs(m) <= r;
}

int RealBall::sign() const {
    if (contains_zero()) return 0;
    return mid_.sgn();
}

bool RealBall::contains_mpq(const mpq_class& q) const {
    mpq_class m = mid_.to_mpq(), r = rad_.to_mpq();
    return abs(q - m) <= r;
}

bool RealBall::overlaps(const RealBall& o) const {
    mpq_class d = abs(mid_.to_mpq() - o.mid_.to_mpq());
    return d <= rad_.to_mpq() + o.rad_.to_mpq();
}

mpq_class RealBall::ub() const { return mid_.to_mpq() + rad_.to_mpq(); }
mpq_class RealBall::lb() const { return mid_.to_mpq() - rad_.to_mpq(); }

bool RealBall::certainly_lt(const RealBall& o) const { return ub() < o.lb(); }

std::string RealBall::str() const {
    std::ostringstream os;
    os << mid_.to_double() << " +/- " << rad_.to_double();
    return os.str();
}

RealBall rb_add(const RealBall& a, const RealBall& b) {
    long prec = std::max(a.prec(), b.prec());
    RealBall c(prec);
    mpfr_add(c.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(c.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    bump_rad_ulp(c.rad_.get(), c.mid_.get());
    return c;
}

RealBall rb_sub(const RealBall& a, const RealBall& b) { return rb_add(a, rb_neg(b)); }

RealBall rb_neg(const RealBall& a) {
    RealBall c = a;
    mpfr_neg(c.mid_.get(), c.mid_.get(), MPFR_RNDN);
    return c;
}

RealBall rb_mul(const RealBall& a, const RealBall& b) {
    long prec = std::max(a.prec(), b.prec());
    RealBall c(prec);
    mpfr_mul(c.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    // |xy - xc yc| <= |xc| rb + |yc| ra + ra rb
    mpfr_t t, u;
    mpfr_init2(t, RealBall::RAD_PREC);
    mpfr_init2(u, RealBall::RAD_PREC);
    mpfr_abs(t, a.mid_.get(), MPFR_RNDU);
    mpfr_mul(t, t, b.rad_.get(), MPFR_RNDU);
    mpfr_set(c.rad_.get(), t, MPFR_RNDU);
    mpfr_abs(t, b.mid_.get(), MPFR_RNDU);
    mpfr_mul(t, t, a.rad_.get(), MPFR_RNDU);
    mpfr_add(c.rad_.get(), c.rad_.get(), t, MPFR_RNDU);
    mpfr_mul(u, a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(c.rad_.get(), c.rad_.get(), u, MPFR_RNDU);
    bump_rad_ulp(c.rad_.get(), c.mid_.get());
    mpfr_clear(t);
    mpfr_clear(u);
    return c;
}

RealBall rb_abs(const RealBall& a) {
    RealBall c = a;
    mpfr_abs(c.mid_.get(), c.mid_.get(), MPFR_RNDN);
    return c;
}

RealBall rb_log(const RealBall& a) {
    if (a.sign() <= 0) throw Error("rb_log: ball not certified positive");
    RealBall c(a.prec());
    mpfr_log(c.mid_.get(), a.mid().get(), MPFR_RNDN);
    // Lipschitz 1/x on [mid-rad, mid+rad]
    mpfr_t lo;
    mpfr_init2(lo, RealBall::RAD_PREC);
    mpfr_sub(lo, a.mid().get(), a.rad().get(), MPFR_RNDD);
    mpfr_div(c.rad_.get(), a.rad().get(), lo, MPFR_RNDU);
    bump_rad_ulp(c.rad_.get(), c.mid_.get());
    mpfr_clear(lo);
    return c;
}

RealBall rb_exp(const RealBall& a) {
    RealBall c(a.prec());
    mpfr_exp(c.mid_.get(), a.mid().get(), MPFR_RNDN);
    // |e^x - e^xc| <= e^{xc + r} * r
    mpfr_t t;
    mpfr_init2(t, RealBall::RAD_PREC);
    mpfr_add(t, a.mid().get(), a.rad().get(), MPFR_RNDU);
    mpfr_exp(t, t, MPFR_RNDU);
    mpfr_mul(t, t, a.rad().get(), MPFR_RNDU);
    mpfr_set(c.rad_.get(), t, MPFR_RNDU);
    bump_rad_ulp(c.rad_.get(), c.mid_.get());
    mpfr_clear(t);
    return c;
}

RealBall rb_pi(long prec) {
    Real mid(prec), rad(RealBall::RAD_PREC);
    mpfr_const_pi(mid.get(), MPFR_RNDN);
    mpfr_set_zero(rad.get(), 1);
    bump_rad_ulp(rad.get(), mid.get());
    return RealBall::from_midrad(mid, rad);
}

/* ---------------- ComplexBall ---------------- */

ComplexBall ComplexBall::exact_si(long re, long prec) {
    ComplexBall b(prec);
    mpfr_set_si(b.re_.get(), re, MPFR_RNDN);
    mpfr_set_zero(b.im_.get(), 1);
    mpfr_set_zero(b.rad_.get(), 1);
    return b;
}

ComplexBall ComplexBall::from_mpq(const mpq_class& re, const mpq_class& im, long prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    mpfr_set_zero(b.rad_.get(), 1);
    if (t1 != 0) bump_rad_ulp(b.rad_.get(), b.re_.get());
    if (t2 != 0) bump_rad_ulp(b.rad_.get(), b.im_.get());
    return b;
}

ComplexBall ComplexBall::from_parts(const Real& re, const Real& im, const Real& rad) {
    ComplexBall b(re.prec());
    b.re_ = re;
    b.im_ = im;
    mpfr_set(b.rad_.get(), rad.get(), MPFR_RNDU);
    mpfr_abs(b.rad_.get(), b.rad_.get(), MPFR_RNDU);
    return b;
}

ComplexBall ComplexBall::from_real(const RealBall& r) {
    ComplexBall b(r.prec());
    b.re_ = r.mid();
    mpfr_set_zero(b.im_.get(), 1);
    mpfr_set(b.rad_.get(), r.rad().get(), MPFR_RNDU);
    return b;
}

bool ComplexBall::contains_zero() const {
    mpq_class x = re_.to_mpq(), y = im_.to_mpq(), r = rad_.to_mpq();
    return x * x + y * y <= r * r;
}

bool ComplexBall::overlaps(const ComplexBall& o) const {
    mpq_class dx = re_.to_mpq() - o.re_.to_mpq();
    mpq_class dy = im_.to_mpq() - o.im_.to_mpq();
    mpq_class s = rad_.to_mpq() + o.rad_.to_mpq();
    return dx * dx + dy * dy <= s * s;
}

bool ComplexBall::separated_from(const ComplexBall& o) const { return !overlaps(o); }

bool ComplexBall::contains(const ComplexBall& o) const {
    mpq_class dx = re_.to_mpq() - o.re_.to_mpq();
    mpq_class dy = im_.to_mpq() - o.im_.to_mpq();
    mpq_class d = rad_.to_mpq() - o.rad_.to_mpq();
    if (d < 0) return false;
    return dx * dx + dy * dy <= d * d;
}

bool ComplexBall::contains_point(const mpq_class& re, const mpq_class& im) const {
    mpq_class dx = re_.to_mpq() - re, dy = im_.to_mpq() - im, r = rad_.to_mpq();
    return dx * dx + dy * dy <= r * r;
}

bool ComplexBall::avoids_log_cut() const {
    mpq_class x = re_.to_mpq(), y = im_.to_mpq(), r = rad_.to_mpq();
    if (x - r > 0) return true;
    if (y - r > 0) return true;
    if (y + r < 0) return true;
    return false;
}

RealBall ComplexBall::abs_ball() const {
    Real mid(prec()), rad(RealBall::RAD_PREC);
    mpfr_hypot(mid.get(), re_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(rad.get(), rad_.get(), MPFR_RNDU);
    bump_rad_ulp(rad.get(), mid.get());
    return RealBall::from_midrad(mid, rad);
}

RealBall ComplexBall::real_ball() const {
    return RealBall::from_midrad(re_, rad_);
}

RealBall ComplexBall::imag_ball() const {
    return RealBall::from_midrad(im_, rad_);
}

Real ComplexBall::abs_ub() const {
    Real r(RealBall::RAD_PREC);
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
    return r;
}

Real ComplexBall::abs_lb() const {
    Real r(RealBall::RAD_PREC);
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDD);
    mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

std::string ComplexBall::str() const {
    std::ostringstream os;
    os << "(" << re_.to_double() << (im_.sgn() < 0 ? " - " : " + ")
       << std::abs(im_.to_double()) << "i) +/- " << rad_.to_double();
    return os.str();
}

ComplexBall cb_add(const ComplexBall& a, const ComplexBall& b) {
    long prec = std::max(a.prec(), b.prec());
    ComplexBall c(prec);
    mpfr_add(c.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_add(c.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_add(c.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    bump_rad_ulp(c.rad_.get(), c.re_.get());
    bump_rad_ulp(c.rad_.get(), c.im_.get());
    return c;
}

ComplexBall cb_neg(const ComplexBall& a) {
    ComplexBall c = a;
    mpfr_neg(c.re_.get(), c.re_.get(), MPFR_RNDN);
    mpfr_neg(c.im_.get(), c.im_.get(), MPFR_RNDN);
    return c;
}

ComplexBall cb_conj(const ComplexBall& a) {
    ComplexBall c = a;
    mpfr_neg(c.im_.get(), c.im_.get(), MPFR_RNDN);
    return c;
}

ComplexBall cb_sub(const ComplexBall& a, const ComplexBall& b) { return cb_add(a, cb_neg(b)); }

ComplexBall cb_mul(const ComplexBall& a, const ComplexBall& b) {
    long prec = std::max(a.prec(), b.prec());
    ComplexBall c(prec);
    mpfr_t t1, t2;
    mpfr_init2(t1, prec);
    mpfr_init2(t2, prec);
    // re = ar*br - ai*bi ; im = ar*bi + ai*br
    mpfr_mul(t1, a.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_mul(t2, a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_sub(c.re_.get(), t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_mul(t2, a.im_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_add(c.im_.get(), t1, t2, MPFR_RNDN);
    mpfr_clear(t1);
    mpfr_clear(t2);
    // |z1 z2 - c1 c2| <= |c1| r2 + |c2| r1 + r1 r2
    Real ma = a.abs_ub(), mb = b.abs_ub();
    mpfr_t r;
    mpfr_init2(r, RealBall::RAD_PREC);
    mpfr_mul(r, ma.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_set(c.rad_.get(), r, MPFR_RNDU);
    mpfr_mul(r, mb.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(c.rad_.get(), c.rad_.get(), r, MPFR_RNDU);
    mpfr_mul(r, a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(c.rad_.get(), c.rad_.get(), r, MPFR_RNDU);
    mpfr_clear(r);
    // four products + two adds of center rounding
    for (int i = 0; i < 3; ++i) {
        bump_rad_ulp(c.rad_.get(), c.re_.get());
        bump_rad_ulp(c.rad_.get(), c.im_.get());
    }
    return c;
}

ComplexBall cb_inv(const ComplexBall& a) {
    Real lb = a.abs_lb();
    if (mpfr_sgn(lb.get()) <= 0)
        throw Error("cb_inv: ball not certified away from zero");
    long prec = a.prec();
    ComplexBall c(prec);
    mpfr_t n, t;
    mpfr_init2(n, prec);
    mpfr_init2(t, prec);
    // n = |c|^2
    mpfr_mul(n, a.re_.get(), a.re_.get(), MPFR_RNDN);
    mpfr_mul(t, a.im_.get(), a.im_.get(), MPFR_RNDN);
    mpfr_add(n, n, t, MPFR_RNDN);
    mpfr_div(c.re_.get(), a.re_.get(), n, MPFR_RNDN);
    mpfr_div(c.im_.get(), a.im_.get(), n, MPFR_RNDN);
    mpfr_neg(c.im_.get(), c.im_.get(), MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(t);
    // |1/z - 1/c| <= r / (|c| (|c| - r)); |c| >= hypot(RNDD), |c|-r >= lb > 0
    mpfr_t r, d;
    mpfr_init2(r, RealBall::RAD_PREC);
    mpfr_init2(d, RealBall::RAD_PREC);
    mpfr_hypot(d, a.re_.get(), a.im_.get(), MPFR_RNDD);
    mpfr_mul(r, d, lb.get(), MPFR_RNDD);
    mpfr_div(c.rad_.get(), a.rad_.get(), r, MPFR_RNDU);
    mpfr_clear(r);
    mpfr_clear(d);
    for (int i = 0; i < 3; ++i) {
        bump_rad_ulp(c.rad_.get(), c.re_.get());
        bump_rad_ulp(c.rad_.get(), c.im_.get());
    }
    return c;
}

ComplexBall cb_div(const ComplexBall& a, const ComplexBall& b) {
    return cb_mul(a, cb_inv(b));
}

ComplexBall cb_pow_ui(const ComplexBall& a, unsigned long e) {
    ComplexBall acc = ComplexBall::exact_si(1, a.prec());
    ComplexBall base = a;
    while (e > 0) {
        if (e & 1UL) acc = cb_mul(acc, base);
        e >>= 1;
        if (e > 0) base = cb_mul(base, base);
    }
    return acc;
}

ComplexBall cb_pow_si(const ComplexBall& a, long e) {
    if (e >= 0) return cb_pow_ui(a, static_cast<unsigned long>(e));
    return cb_inv(cb_pow_ui(a, static_cast<unsigned long>(-e)));
}

ComplexBall cb_exp(const ComplexBall& a) {
    long prec = a.prec();
    ComplexBall c(prec);
    mpfr_t ex, s, co;
    mpfr_init2(ex, prec);
    mpfr_init2(s, prec);
    mpfr_init2(co, prec);
    mpfr_exp(ex, a.re_.get(), MPFR_RNDN);
    mpfr_sin_cos(s, co, a.im_.get(), MPFR_RNDN);
    mpfr_mul(c.re_.get(), ex, co, MPFR_RNDN);
    mpfr_mul(c.im_.get(), ex, s, MPFR_RNDN);
    mpfr_clear(s);
    mpfr_clear(co);
    // Lipschitz: sup_D |exp| = e^{Re c + r}
    mpfr_t m;
    mpfr_init2(m, RealBall::RAD_PREC);
    mpfr_add(m, a.re_.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_exp(m, m, MPFR_RNDU);
    mpfr_mul(m, m, a.rad_.get(), MPFR_RNDU);
    mpfr_set(c.rad_.get(), m, MPFR_RNDU);
    mpfr_clear(m);
    mpfr_clear(ex);
    for (int i = 0; i < 2; ++i) {
        bump_rad_ulp(c.rad_.get(), c.re_.get());
        bump_rad_ulp(c.rad_.get(), c.im_.get());
    }
    return c;
}

ComplexBall cb_log_principal(const ComplexBall& a) {
    if (!a.avoids_log_cut())
        throw Error("cb_log_principal: disk meets the branch cut");
    Real lb = a.abs_lb();
    if (mpfr_sgn(lb.get()) <= 0)
        throw Error("cb_log_principal: disk not certified away from zero");
    long prec = a.prec();
    ComplexBall c(prec);
    mpfr_t h;
    mpfr_init2(h, prec);
    mpfr_hypot(h, a.re_.get(), a.im_.get(), MPFR_RNDN);
    mpfr_log(c.re_.get(), h, MPFR_RNDN);
    mpfr_atan2(c.im_.get(), a.im_.get(), a.re_.get(), MPFR_RNDN);
    mpfr_clear(h);
    // Lipschitz |1/z| <= 1/lb on the disk
    mpfr_div(c.rad_.get(), a.rad_.get(), lb.get(), MPFR_RNDU);
    for (int i = 0; i < 2; ++i) {
        bump_rad_ulp(c.rad_.get(), c.re_.get());
        bump_rad_ulp(c.rad_.get(), c.im_.get());
    }
    return c;
}

ComplexBall cb_scale_mpq(const ComplexBall& a, const mpq_class& q) {
    long prec = a.prec();
    ComplexBall c(prec);
    mpfr_mul_q(c.re_.get(), a.re_.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(c.im_.get(), a.im_.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_t aq;
    mpfr_init2(aq, RealBall::RAD_PREC);
    mpfr_set_q(aq, q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(aq, aq, MPFR_RNDU);
    mpfr_mul(c.rad_.get(), a.rad_.get(), aq, MPFR_RNDU);
    mpfr_clear(aq);
    bump_rad_ulp(c.rad_.get(), c.re_.get());
    bump_rad_ulp(c.rad_.get(), c.im_.get());
    return c;
}

ComplexBall cb_widen(const ComplexBall& a, const Real& extra) {
    ComplexBall c = a;
    mpfr_add(c.rad_.get(), c.rad_.get(), extra.get(), MPFR_RNDU);
    mpfr_abs(c.rad_.get(), c.rad_.get(), MPFR_RNDU);
    return c;
}

ComplexBall cb_unit_root(const mpq_class& t, long prec) {
    // reduce t into [0,1) so the mpfr angle stays small
    mpq_class tr = t;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), tr.get_num().get_mpz_t(), tr.get_den().get_mpz_t());
    tr -= mpq_class(fl);
    // theta = 2 * pi * tr as a ball (exact rational scaling)
    Real th_mid(prec + 8), th_rad(RealBall::RAD_PREC);
    mpfr_const_pi(th_mid.get(), MPFR_RNDN);
    mpfr_set_zero(th_rad.get(), 1);
    bump_rad_ulp(th_rad.get(), th_mid.get());
    mpq_class two_tr = 2 * tr;
    mpfr_mul_q(th_mid.get(), th_mid.get(), two_tr.get_mpq_t(), MPFR_RNDN);
    mpfr_t aq;
    mpfr_init2(aq, RealBall::RAD_PREC);
    mpfr_set_q(aq, two_tr.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(aq, aq, MPFR_RNDU);
    mpfr_mul(th_rad.get(), th_rad.get(), aq, MPFR_RNDU);
    mpfr_clear(aq);
    bump_rad_ulp(th_rad.get(), th_mid.get());
    // exp(i theta): cos/sin centers; radius = theta radius (Lipschitz 1) + ulps
    Real cre(prec), cim(prec);
    mpfr_sin_cos(cim.get(), cre.get(), th_mid.get(), MPFR_RNDN);
    Real crad(RealBall::RAD_PREC);
    mpfr_set(crad.get(), th_rad.get(), MPFR_RNDU);
    bump_rad_ulp(crad.get(), cre.get());
    bump_rad_ulp(crad.get(), cim.get());
    return ComplexBall::from_parts(cre, cim, crad);
}

} // namespace pexp
