#ifndef PEXP_BALL_HPP
#define PEXP_BALL_HPP

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace pexp {

/* RAII wrapper over mpfr_t with value semantics. Centers of balls are
 * arbitrary-precision dyadic rationals (what mpfr numbers are); all
 * radius arithmetic rounds up. */
class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sgn() const { return mpfr_sgn(v_); }

    /* exact dyadic value as a rational */
    mpq_class to_mpq() const;
    /* exact dyadic decomposition value = mantissa * 2^exp */
    std::pair<mpz_class, long> to_dyadic() const;
    static Real from_dyadic(const mpz_class& mantissa, long exp);

private:
    mpfr_t v_;
};

/* Closed interval [mid - rad, mid + rad]. The true value it certifies is
 * always contained; refinement shrinks but never loses it. */
class RealBall {
public:
    RealBall() : mid_(64), rad_(RAD_PREC) {}
    explicit RealBall(long prec) : mid_(prec), rad_(RAD_PREC) {}

    static RealBall exact_si(long v, long prec);
    static RealBall exact_mpz(const mpz_class& v, long prec);
    static RealBall from_mpq(const mpq_class& q, long prec);
    static RealBall from_midrad(const Real& mid, const Real& rad);

    const Real& mid() const { return mid_; }
    const Real& rad() const { return rad_; }
    long prec() const { return mid_.prec(); }

    bool contains_zero() const;
    bool is_nonzero() const { return !contains_zero(); }
    /* certified sign: +1, -1, or 0 when the ball straddles zero */
    int sign() const;
    bool contains_mpq(const mpq_class& q) const;
    bool overlaps(const RealBall& o) const;
    /* upper/lower bounds as exact dyadics */
    mpq_class ub() const;
    mpq_class lb() const;
    /* certified strict comparison: true only if every point of *this is
     * below every point of o */
    bool certainly_lt(const RealBall& o) const;

    std::string str() const;

    friend RealBall rb_add(const RealBall&, const RealBall&);
    friend RealBall rb_sub(const RealBall&, const RealBall&);
    friend RealBall rb_mul(const RealBall&, const RealBall&);
    friend RealBall rb_neg(const RealBall&);
    friend RealBall rb_abs(const RealBall&);
    friend RealBall rb_log(const RealBall&);   // requires certified positive
    friend RealBall rb_exp(const RealBall&);
    friend class ComplexBall;

    static constexpr long RAD_PREC = 32;

private:
    Real mid_;
    Real rad_;  // >= 0, RAD_PREC bits, rounded up
};

RealBall rb_add(const RealBall&, const RealBall&);
RealBall rb_sub(const RealBall&, const RealBall&);
RealBall rb_mul(const RealBall&, const RealBall&);
RealBall rb_neg(const RealBall&);
RealBall rb_abs(const RealBall&);
RealBall rb_log(const RealBall&);
RealBall rb_exp(const RealBall&);

/* Disk {z : |z - center| <= radius} with dyadic center and radius. */
class ComplexBall {
public:
    ComplexBall() : re_(64), im_(64), rad_(RealBall::RAD_PREC) {}
    explicit ComplexBall(long prec) : re_(prec), im_(prec), rad_(RealBall::RAD_PREC) {}

    static ComplexBall exact_si(long re, long prec);
    static ComplexBall from_mpq(const mpq_class& re, const mpq_class& im, long prec);
    static ComplexBall from_parts(const Real& re, const Real& im, const Real& rad);
    static ComplexBall from_real(const RealBall& r);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }
    long prec() const { return re_.prec(); }

    bool contains_zero() const;
    bool is_nonzero() const { return !contains_zero(); }
    bool overlaps(const ComplexBall& o) const;
    /* certified disjointness (strict) */
    bool separated_from(const ComplexBall& o) const;
    /* does this disk contain the whole disk o (certified)? */
    bool contains(const ComplexBall& o) const;
    bool contains_point(const mpq_class& re, const mpq_class& im) const;
    /* certified: disk lies off the closed negative real axis */
    bool avoids_log_cut() const;
    /* certified: every point has |Im| < pi (used for torsion index isolation) */

    RealBall abs_ball() const;
    RealBall real_ball() const;
    RealBall imag_ball() const;
    /* upper bound of |center| + rad as a Real (rounded up) */
    Real abs_ub() const;
    Real abs_lb() const;  // max(|center| - rad, 0), rounded down

    std::string str() const;

    friend ComplexBall cb_add(const ComplexBall&, const ComplexBall&);
    friend ComplexBall cb_sub(const ComplexBall&, const ComplexBall&);
    friend ComplexBall cb_mul(const ComplexBall&, const ComplexBall&);
    friend ComplexBall cb_div(const ComplexBall&, const ComplexBall&);
    friend ComplexBall cb_neg(const ComplexBall&);
    friend ComplexBall cb_conj(const ComplexBall&);
    friend ComplexBall cb_inv(const ComplexBall&);
    friend ComplexBall cb_pow_ui(const ComplexBall&, unsigned long);
    friend ComplexBall cb_exp(const ComplexBall&);
    friend ComplexBall cb_log_principal(const ComplexBall&);
    friend ComplexBall cb_scale_mpq(const ComplexBall&, const mpq_class&);
    friend ComplexBall cb_widen(const ComplexBall&, const Real& extra);

private:
    Real re_, im_;
    Real rad_;
};

ComplexBall cb_add(const ComplexBall&, const ComplexBall&);
ComplexBall cb_sub(const ComplexBall&, const ComplexBall&);
ComplexBall cb_mul(const ComplexBall&, const ComplexBall&);
ComplexBall cb_div(const ComplexBall&, const ComplexBall&);
ComplexBall cb_neg(const ComplexBall&);
ComplexBall cb_conj(const ComplexBall&);
ComplexBall cb_inv(const ComplexBall&);
ComplexBall cb_pow_ui(const ComplexBall&, unsigned long);
ComplexBall cb_pow_si(const ComplexBall&, long);
ComplexBall cb_exp(const ComplexBall&);
/* principal log; caller must ensure avoids_log_cut() */
ComplexBall cb_log_principal(const ComplexBall&);
ComplexBall cb_scale_mpq(const ComplexBall&, const mpq_class&);
ComplexBall cb_widen(const ComplexBall&, const Real& extra);

/* pi as a ball at the given precision */
RealBall rb_pi(long prec);

/* e^{2*pi*i*t} for rational t, as a certified ball */
ComplexBall cb_unit_root(const mpq_class& t, long prec);

} // namespace pexp

#endif
