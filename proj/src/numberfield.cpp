#include "pexp/numberfield.hpp"
#include "pexp/config.hpp"
#include "pexp/error.hpp"
#include "pexp/factor_z.hpp"
#include "pexp/field_factor.hpp"

#include <algorithm>
#include <sstream>

namespace pexp {

/* ---------------- NumberField ---------------- */

FieldPtr NumberField::rationals() {
    static FieldPtr q = [] {
        IntPolynomial x{0, 1};  // X, root 0
        ComplexBall zero = ComplexBall::exact_si(0, 64);
        auto f = std::shared_ptr<NumberField>(new NumberField(x, zero));
        f->conj_.push_back(RootBall{zero, true, 0});
        f->theta_idx_ = 0;
        return FieldPtr(f);
    }();
    return q;
}

FieldPtr NumberField::create(const IntPolynomial& minpoly, const ComplexBall& isolating) {
    if (!minpoly.is_monic())
        throw Error("NumberField: minimal polynomial must be monic");
    auto f = std::shared_ptr<NumberField>(new NumberField(minpoly, isolating));
    f->ensure_conjugates();  // validates the isolating ball
    return FieldPtr(f);
}

void NumberField::ensure_conjugates() const {
    std::lock_guard<std::mutex> lk(mu_);
    if (!conj_.empty()) return;
    conj_ = isolate_roots(minpoly_);
    // locate theta among the conjugates
    long e = -64;
    ComplexBall tb = theta_;
    while (true) {
        int hit = -1, hits = 0;
        for (size_t i = 0; i < conj_.size(); ++i) {
            if (conj_[i].ball.overlaps(tb)) {
                ++hits;
                hit = static_cast<int>(i);
            }
        }
        if (hits == 1) {
            theta_idx_ = hit;
            theta_ = tb;
            return;
        }
        if (-e > config().max_prec) throw CertificationError("embedding ball does not isolate a root");
        tb = refine_root(minpoly_, tb, e);
        e -= 64;
    }
}

ComplexBall NumberField::theta_ball(long rad_exp2) const {
    ensure_conjugates();
    std::lock_guard<std::mutex> lk(mu_);
    mpq_class target = rad_exp2 >= 0
                           ? mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2))
                           : mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
    if (theta_.rad().to_mpq() > target) theta_ = refine_root(minpoly_, theta_, rad_exp2);
    return theta_;
}

std::vector<RootBall> NumberField::conjugates(long rad_exp2) const {
    ensure_conjugates();
    std::lock_guard<std::mutex> lk(mu_);
    mpq_class target = rad_exp2 >= 0
                           ? mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2))
                           : mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
    for (auto& r : conj_) {
        if (r.ball.rad().to_mpq() > target) r.ball = refine_root(minpoly_, r.ball, rad_exp2);
    }
    return conj_;
}

int NumberField::theta_index() const {
    ensure_conjugates();
    return theta_idx_;
}

bool NumberField::theta_real() const {
    ensure_conjugates();
    return conj_[static_cast<size_t>(theta_idx_)].real;
}

bool NumberField::compatible(const NumberField& o) const {
    if (this == &o) return true;
    if (minpoly_ != o.minpoly_) return false;
    return theta_index() == o.theta_index();
}

/* ---------------- AlgebraicNumber basics ---------------- */

AlgebraicNumber::AlgebraicNumber() : field_(NumberField::rationals()), coords_(1, mpq_class(0)) {}

AlgebraicNumber AlgebraicNumber::from_rational(const mpq_class& q) {
    AlgebraicNumber a;
    a.coords_[0] = q;
    return a;
}

AlgebraicNumber AlgebraicNumber::from_int(long v) { return from_rational(mpq_class(v)); }

AlgebraicNumber AlgebraicNumber::generator(const FieldPtr& f) {
    AlgebraicNumber a;
    a.field_ = f;
    a.coords_.assign(static_cast<size_t>(f->degree()), mpq_class(0));
    if (f->degree() == 1) {
        // theta of the rational field is 0
        a.coords_[0] = 0;
    } else {
        a.coords_[1] = 1;
    }
    return a;
}

AlgebraicNumber AlgebraicNumber::from_coords(const FieldPtr& f, std::vector<mpq_class> coords) {
    AlgebraicNumber a;
    a.field_ = f;
    coords.resize(static_cast<size_t>(f->degree()), mpq_class(0));
    a.coords_ = std::move(coords);
    return a;
}

AlgebraicNumber AlgebraicNumber::from_minpoly_root(const IntPolynomial& irreducible,
                                                   const ComplexBall& isolating) {
    int d = irreducible.degree();
    if (d < 1) throw Error("from_minpoly_root: constant polynomial");
    if (d == 1) {
        mpq_class v(-irreducible.coeff(0), irreducible.coeff(1));
        v.canonicalize();
        return from_rational(v);
    }
    const mpz_class& lc = irreducible.lc();
    if (lc == 1) {
        FieldPtr f = NumberField::create(irreducible, isolating);
        return generator(f);
    }
    // integral generator: theta = lc * alpha with monic minpoly lc^(d-1) f(X/lc)
    IntPolynomial F;
    F.c.assign(irreducible.c.size(), mpz_class(0));
    mpz_class pw = 1;
    for (int i = d; i >= 0; --i) {
        F.c[static_cast<size_t>(i)] = irreducible.c[static_cast<size_t>(i)] * pw;
        if (i > 0) pw *= lc;
    }
    F.normalize();
    ComplexBall tb = cb_scale_mpq(isolating, mpq_class(lc));
    FieldPtr f = NumberField::create(F, tb);
    std::vector<mpq_class> coords(static_cast<size_t>(d), mpq_class(0));
    coords[1] = mpq_class(1, lc);
    coords[1].canonicalize();
    return from_coords(f, std::move(coords));
}

AlgebraicNumber AlgebraicNumber::from_minpoly_approx(const IntPolynomial& irreducible,
                                                     const mpq_class& approx_re,
                                                     const mpq_class& approx_im) {
    if (irreducible.degree() < 1) throw Error("from_minpoly_approx: constant polynomial");
    if (irreducible.degree() == 1) {
        mpq_class v(-irreducible.coeff(0), irreducible.coeff(1));
        v.canonicalize();
        return from_rational(v);
    }
    auto roots = isolate_roots(irreducible);
    // squared distances from the approximation to the disk centers
    std::vector<mpq_class> d2;
    for (auto& r : roots) {
        mpq_class dx = r.ball.re().to_mpq() - approx_re;
        mpq_class dy = r.ball.im().to_mpq() - approx_im;
        d2.push_back(dx * dx + dy * dy);
    }
    size_t best = 0;
    for (size_t i = 1; i < d2.size(); ++i)
        if (d2[i] < d2[best]) best = i;
    for (size_t i = 0; i < d2.size(); ++i) {
        if (i == best) continue;
        if (d2[i] <= 4 * d2[best])
            throw CertificationError("approximation does not isolate a root of " +
                                     irreducible.str());
    }
    return from_minpoly_root(irreducible, roots[best].ball);
}

bool AlgebraicNumber::is_zero() const {
    for (const auto& v : coords_)
        if (v != 0) return false;
    return true;
}

bool AlgebraicNumber::is_one() const {
    if (coords_[0] != 1) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

bool AlgebraicNumber::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

mpq_class AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw Error("rational_value: element is not rational");
    return coords_[0];
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    AlgebraicNumber r = *this;
    for (auto& v : r.coords_) v = -v;
    return r;
}

/* ---------------- coordinate arithmetic in one field ---------------- */

namespace {

QPoly coords_to_qpoly(const std::vector<mpq_class>& c) {
    QPoly p;
    p.c = c;
    p.normalize();
    return p;
}

std::vector<mpq_class> qpoly_to_coords(const QPoly& p, int d) {
    std::vector<mpq_class> c(static_cast<size_t>(d), mpq_class(0));
    for (size_t i = 0; i < p.c.size(); ++i) c[i] = p.c[i];
    return c;
}

/* reduce a QPoly mod the (monic) field minpoly */
QPoly reduce_mod_field(QPoly p, const IntPolynomial& m) {
    QPoly mq = to_qpoly(m);
    return poly_mod(p, mq);
}

AlgebraicNumber mul_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    const FieldPtr& f = a.field();
    QPoly p = coords_to_qpoly(a.coords()) * coords_to_qpoly(b.coords());
    p = reduce_mod_field(std::move(p), f->minpoly());
    return AlgebraicNumber::from_coords(f, qpoly_to_coords(p, f->degree()));
}

AlgebraicNumber add_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b, bool sub) {
    const FieldPtr& f = a.field();
    std::vector<mpq_class> c = a.coords();
    for (size_t i = 0; i < c.size(); ++i) {
        if (sub)
            c[i] -= b.coords()[i];
        else
            c[i] += b.coords()[i];
    }
    return AlgebraicNumber::from_coords(f, std::move(c));
}

/* lift a rational into F */
AlgebraicNumber lift_rational(const mpq_class& q, const FieldPtr& f) {
    std::vector<mpq_class> c(static_cast<size_t>(f->degree()), mpq_class(0));
    c[0] = q;
    return AlgebraicNumber::from_coords(f, std::move(c));
}

/* align two elements into one field, composing when necessary */
void align(AlgebraicNumber& a, AlgebraicNumber& b) {
    if (a.field().get() == b.field().get()) return;
    if (a.field()->compatible(*b.field())) {
        b = AlgebraicNumber::from_coords(a.field(), b.coords());
        return;
    }
    if (a.is_rational() && a.field()->is_rational_field()) {
        a = lift_rational(a.rational_value(), b.field());
        return;
    }
    if (b.is_rational() && b.field()->is_rational_field()) {
        b = lift_rational(b.rational_value(), a.field());
        return;
    }
    Composite c = field_compose(a, b);
    a = c.a;
    b = c.b;
}

} // namespace

AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    AlgebraicNumber a = x, b = y;
    align(a, b);
    return add_same_field(a, b, false);
}

AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    AlgebraicNumber a = x, b = y;
    align(a, b);
    return add_same_field(a, b, true);
}

AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    AlgebraicNumber a = x, b = y;
    align(a, b);
    return mul_same_field(a, b);
}

AlgebraicNumber operator*(const AlgebraicNumber& x, long v) {
    AlgebraicNumber r = x;
    std::vector<mpq_class> c = r.coords();
    for (auto& t : c) t *= v;
    return AlgebraicNumber::from_coords(r.field(), std::move(c));
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return from_rational(mpq_class(1) / coords_[0]);
    // extended Euclid: s * a + t * m = 1 in Q[X]
    QPoly a = coords_to_qpoly(coords_);
    QPoly m = to_qpoly(field_->minpoly());
    QPoly r0 = m, r1 = a, s0 = QPoly{}, s1 = QPoly::constant(mpq_class(1));
    while (!r1.is_zero()) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd (a unit since m irreducible and a nonzero of lower degree)
    if (r0.degree() != 0) throw Error("inverse: gcd not a unit");
    QPoly inv = scale(s0, k_inv(r0.c[0]));
    inv = reduce_mod_field(std::move(inv), field_->minpoly());
    return from_coords(field_, qpoly_to_coords(inv, field_->degree()));
}

AlgebraicNumber operator/(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    AlgebraicNumber a = x, b = y;
    align(a, b);
    return mul_same_field(a, b.inverse());
}

AlgebraicNumber an_pow(const AlgebraicNumber& a, const mpz_class& e) {
    if (e < 0) return an_pow(a.inverse(), -e);
    AlgebraicNumber acc = lift_rational(1, a.field());
    AlgebraicNumber base = a;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul_same_field(acc, base);
        k >>= 1;
        if (k > 0) base = mul_same_field(base, base);
    }
    return acc;
}

/* ---------------- balls and certified predicates ---------------- */

ComplexBall AlgebraicNumber::ball(long rad_exp2) const {
    mpq_class target = rad_exp2 >= 0
                           ? mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2))
                           : mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
    long e = rad_exp2 - 16;
    while (true) {
        long prec = std::max<long>(config().start_prec, -e + 32);
        ComplexBall tb = field_->theta_ball(e);
        ComplexBall acc = ComplexBall::exact_si(0, prec);
        for (int i = field_->degree() - 1; i >= 0; --i) {
            acc = cb_mul(acc, tb);
            acc = cb_add(acc, ComplexBall::from_mpq(coords_[static_cast<size_t>(i)], 0, prec));
        }
        if (acc.rad().to_mpq() <= target) return acc;
        e = 2 * e - 64;
        if (-e > 8 * config().max_prec) throw PrecisionExhausted(config().max_prec);
    }
}

std::vector<ComplexBall> AlgebraicNumber::conjugate_balls(long rad_exp2) const {
    mpq_class target = rad_exp2 >= 0
                           ? mpq_class(mpz_class(1) << static_cast<unsigned>(rad_exp2))
                           : mpq_class(1, mpz_class(1) << static_cast<unsigned>(-rad_exp2));
    long e = rad_exp2 - 16;
    while (true) {
        long prec = std::max<long>(config().start_prec, -e + 32);
        auto conj = field_->conjugates(e);
        std::vector<ComplexBall> out;
        bool ok = true;
        for (auto& rb : conj) {
            ComplexBall acc = ComplexBall::exact_si(0, prec);
            for (int i = field_->degree() - 1; i >= 0; --i) {
                acc = cb_mul(acc, rb.ball);
                acc = cb_add(acc, ComplexBall::from_mpq(coords_[static_cast<size_t>(i)], 0, prec));
            }
            if (acc.rad().to_mpq() > target) {
                ok = false;
                break;
            }
            out.push_back(acc);
        }
        if (ok) return out;
        e = 2 * e - 64;
        if (-e > 8 * config().max_prec) throw PrecisionExhausted(config().max_prec);
    }
}

/* ---------------- element minimal polynomial ---------------- */

IntPolynomial an_minpoly(const AlgebraicNumber& a) {
    if (a.is_rational()) {
        mpq_class v = a.coords()[0];
        IntPolynomial p;
        p.c.push_back(-v.get_num());
        p.c.push_back(v.get_den());
        p.normalize();
        if (p.degree() < 1) {  // v == 0: minpoly is X
            return IntPolynomial{0, 1};
        }
        return p.primitive_part();
    }
    int d = a.field()->degree();
    // the generator's minimal polynomial is the field polynomial
    {
        bool is_gen = a.coords()[1] == 1;
        if (is_gen) {
            if (a.coords()[0] != 0) is_gen = false;
            for (size_t i = 2; is_gen && i < a.coords().size(); ++i)
                if (a.coords()[i] != 0) is_gen = false;
        }
        if (is_gen) return a.field()->minpoly();
    }
    // incremental Gaussian elimination over the power basis
    struct Row {
        std::vector<mpq_class> v;      // length d
        std::vector<mpq_class> combo;  // coefficients over powers of a
        int pivot;
    };
    std::vector<Row> rows;
    AlgebraicNumber pw = AlgebraicNumber::from_int(1);
    pw = lift_into(pw, a.field());
    for (int k = 0; k <= d; ++k) {
        Row r;
        r.v = pw.coords();
        r.combo.assign(static_cast<size_t>(k) + 1, mpq_class(0));
        r.combo[static_cast<size_t>(k)] = 1;
        // reduce
        for (const Row& p : rows) {
            const mpq_class& f = r.v[static_cast<size_t>(p.pivot)];
            if (f == 0) continue;
            mpq_class fc = f;  // copy: r.v mutates
            for (size_t i = 0; i < r.v.size(); ++i) r.v[i] -= fc * p.v[i];
            for (size_t i = 0; i < p.combo.size() && i < r.combo.size(); ++i)
                r.combo[i] -= fc * p.combo[i];
        }
        bool zero = true;
        int piv = -1;
        for (size_t i = 0; i < r.v.size(); ++i)
            if (r.v[i] != 0) {
                zero = false;
                piv = static_cast<int>(i);
                break;
            }
        if (zero) {
            QPoly mp;
            mp.c = r.combo;
            mp.normalize();
            IntPolynomial out = to_intpoly_primitive(mp);
            if (out.lc() < 0) out = -out;
            return out;
        }
        // normalize pivot to 1
        mpq_class inv = mpq_class(1) / r.v[static_cast<size_t>(piv)];
        for (auto& t : r.v) t *= inv;
        for (auto& t : r.combo) t *= inv;
        r.pivot = piv;
        rows.push_back(std::move(r));
        if (k < d) pw = mul_same_field(pw, a);
    }
    throw Error("an_minpoly: no dependency found (corrupt field)");
}

/* ---------------- norms and traces ---------------- */

mpq_class an_norm(const AlgebraicNumber& a) {
    if (a.is_rational()) {
        mpq_class v = a.coords()[0];
        mpq_class r = 1;
        for (int i = 0; i < a.field()->degree(); ++i) r *= v;
        return r;
    }
    if (a.is_zero()) return 0;
    // N(a) = Res(m, A_int) / D^deg(m) with A = A_int / D
    const IntPolynomial& m = a.field()->minpoly();
    mpz_class D = 1;
    for (const auto& v : a.coords()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den().get_mpz_t());
    IntPolynomial A;
    for (const auto& v : a.coords()) {
        mpq_class s = v * mpq_class(D);
        A.c.push_back(s.get_num());
    }
    A.normalize();
    mpz_class r = resultant(m, A);
    mpz_class Dp;
    mpz_pow_ui(Dp.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(m.degree()));
    mpq_class out(r, Dp);
    out.canonicalize();
    return out;
}

mpq_class an_trace(const AlgebraicNumber& a) {
    // power sums of theta via Newton's identities
    const IntPolynomial& m = a.field()->minpoly();
    int d = m.degree();
    std::vector<mpq_class> p(static_cast<size_t>(d), mpq_class(0));  // p[k] = tr(theta^k)
    // e_i = (-1)^i m_{d-i} (monic)
    std::vector<mpq_class> e(static_cast<size_t>(d) + 1, mpq_class(0));
    for (int i = 0; i <= d; ++i) {
        mpq_class v(m.coeff(d - i));
        e[static_cast<size_t>(i)] = (i % 2 == 0) ? v : -v;
    }
    p[0] = d;
    for (int k = 1; k < d; ++k) {
        mpq_class s = mpq_class(k) * e[static_cast<size_t>(k)] * ((k % 2 == 1) ? 1 : -1);
        for (int i = 1; i < k; ++i) {
            mpq_class term = e[static_cast<size_t>(i)] * p[static_cast<size_t>(k - i)];
            s += ((i % 2 == 1) ? term : -term);
        }
        p[static_cast<size_t>(k)] = s;
    }
    mpq_class tr = 0;
    for (size_t i = 0; i < a.coords().size(); ++i) tr += a.coords()[i] * p[i];
    return tr;
}

/* ---------------- equality / reality / sign ---------------- */

namespace {

/* index of the isolated root of the polynomial that the element equals */
int locate_root(const AlgebraicNumber& a, const IntPolynomial& /*poly*/,
                const std::vector<RootBall>& roots) {
    long e = -64;
    while (true) {
        ComplexBall ab = a.ball(e);
        int hit = -1, hits = 0;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].ball.overlaps(ab)) {
                ++hits;
                hit = static_cast<int>(i);
            }
        }
        if (hits == 1) return hit;
        if (hits == 0) throw Error("locate_root: element is not a root of the polynomial");
        e -= 64;
        if (-e > 2 * config().max_prec) throw PrecisionExhausted(config().max_prec);
    }
}

} // namespace

bool an_equal(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.field().get() == y.field().get() || x.field()->compatible(*y.field()))
        return x.coords() == y.coords();
    if (x.is_rational() && y.is_rational()) return x.coords()[0] == y.coords()[0];
    if (x.is_rational() != y.is_rational()) {
        if (x.is_rational() || y.is_rational()) {
            const AlgebraicNumber& r = x.is_rational() ? x : y;
            const AlgebraicNumber& o = x.is_rational() ? y : x;
            // a rational equals o iff o is rational with the same value
            return o.is_rational() && o.coords()[0] == r.coords()[0];
        }
    }
    IntPolynomial mx = an_minpoly(x), my = an_minpoly(y);
    if (mx != my) return false;
    auto roots = isolate_roots(mx);
    return locate_root(x, mx, roots) == locate_root(y, my, roots);
}

bool AlgebraicNumber::is_real() const {
    if (is_rational()) return true;
    if (field_->theta_real()) return true;
    IntPolynomial m = an_minpoly(*this);
    if (m.degree() == 1) return true;
    auto roots = isolate_roots(m);
    return roots[static_cast<size_t>(locate_root(*this, m, roots))].real;
}

int AlgebraicNumber::sign_real() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(coords_[0]);
    long e = -64;
    while (true) {
        RealBall rb = ball(e).real_ball();
        int s = rb.sign();
        if (s != 0) return s;
        e -= 64;
        if (-e > 2 * config().max_prec) throw PrecisionExhausted(config().max_prec);
    }
}

std::string AlgebraicNumber::str() const {
    std::ostringstream os;
    if (is_rational()) {
        os << coords_[0];
        return os.str();
    }
    os << "alg[";
    os << an_minpoly(*this).str();
    os << " ~ " << ball(-32).str() << "]";
    return os.str();
}

/* ---------------- logs ---------------- */

ComplexBall principal_log(const AlgebraicNumber& a, long prec) {
    if (a.is_zero()) throw DivisionByZero();
    long e = -std::max<long>(prec, 64);
    for (int round = 0; round < 8; ++round) {
        ComplexBall b = a.ball(e);
        if (b.avoids_log_cut()) return cb_log_principal(b);
        e *= 2;
        if (-e > config().max_prec) break;
    }
    // the ball keeps meeting the cut: decide reality exactly
    if (a.is_real() && a.sign_real() < 0) {
        AlgebraicNumber na = -a;
        long ee = -std::max<long>(prec, 64);
        ComplexBall b = na.ball(ee);
        while (!b.avoids_log_cut()) {
            ee *= 2;
            if (-ee > config().max_prec) throw PrecisionExhausted(config().max_prec);
            b = na.ball(ee);
        }
        ComplexBall lg = cb_log_principal(b);
        // + i*pi
        RealBall pi = rb_pi(std::max<long>(prec, 64));
        RealBall im = rb_add(RealBall::from_midrad(lg.im(), lg.rad()), pi);
        Real rad(RealBall::RAD_PREC);
        mpfr_add(rad.get(), lg.rad().get(), im.rad().get(), MPFR_RNDU);
        return ComplexBall::from_parts(lg.re(), im.mid(), rad);
    }
    throw PrecisionExhausted(config().max_prec);
}

/* ---------------- composition of fields ---------------- */

AlgebraicNumber lift_into(const AlgebraicNumber& a, const FieldPtr& f) {
    if (a.field().get() == f.get() || a.field()->compatible(*f)) {
        return AlgebraicNumber::from_coords(f, a.coords());
    }
    if (a.is_rational()) return lift_rational(a.rational_value(), f);
    throw Error("lift_into: element not in target field");
}

AlgebraicNumber map_through(const AlgebraicNumber& a, const AlgebraicNumber& theta_image) {
    const FieldPtr& F = theta_image.field();
    AlgebraicNumber acc = lift_rational(0, F);
    for (int i = a.field()->degree() - 1; i >= 0; --i) {
        acc = mul_same_field(acc, theta_image);
        acc = add_same_field(acc, lift_rational(a.coords()[static_cast<size_t>(i)], F), false);
    }
    return acc;
}

namespace {

/* Lagrange interpolation with exact rational arithmetic; asserts integrality */
IntPolynomial interpolate_integer(const std::vector<long>& xs, const std::vector<mpz_class>& ys) {
    size_t n = xs.size();
    QPoly acc;  // running interpolant (Newton form accumulation)
    QPoly basis = QPoly::constant(mpq_class(1));
    std::vector<mpq_class> dd(n);  // divided differences table, destructive
    for (size_t i = 0; i < n; ++i) dd[i] = mpq_class(ys[i]);
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - level]);
            if (i == level) break;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        acc = acc + scale(basis, dd[i]);
        QPoly lin;
        lin.c = {mpq_class(-xs[i]), mpq_class(1)};
        basis = basis * lin;
    }
    IntPolynomial out = to_intpoly_primitive(acc);
    // verify exact integrality of the interpolant (to_intpoly_primitive strips
    // content; re-check by direct conversion)
    for (const auto& v : acc.c) {
        if (v.get_den() != 1) throw Error("interpolate_integer: non-integer interpolant");
    }
    IntPolynomial direct;
    for (const auto& v : acc.c) direct.c.push_back(v.get_num());
    direct.normalize();
    return direct;
}

} // namespace

Composite field_compose(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    FieldPtr Fa = x.field(), Fb = y.field();
    if (Fa.get() == Fb.get() || Fa->compatible(*Fb))
        return {Fa, x, AlgebraicNumber::from_coords(Fa, y.coords())};
    if (Fa->is_rational_field()) return {Fb, lift_rational(x.rational_value(), Fb), y};
    if (Fb->is_rational_field()) return {Fa, x, lift_rational(y.rational_value(), Fa)};

    int da = Fa->degree(), db = Fb->degree();
    // subfield fast paths keep the working field stable
    if (db <= da && da % db == 0) {
        AlgebraicNumber tb = AlgebraicNumber::generator(Fb);
        if (auto img = try_express_in(tb, Fa)) {
            return {Fa, x, map_through(y, *img)};
        }
    }
    if (da < db && db % da == 0) {
        AlgebraicNumber ta = AlgebraicNumber::generator(Fa);
        if (auto img = try_express_in(ta, Fb)) {
            return {Fb, map_through(x, *img), y};
        }
    }

    long target_deg = static_cast<long>(da) * db;
    if (target_deg > config().max_field_degree) throw FieldDegreeOverflow(target_deg);

    const IntPolynomial& ma = Fa->minpoly();
    const IntPolynomial& mb = Fb->minpoly();

    for (long mi = 1; mi <= 40; ++mi) {
        for (long sgn_m : {1L, -1L}) {
            long m = sgn_m * mi;
            // R(X) = Res_Y(mb(Y), ma(X - mY)), monic of degree da*db
            int D = da * db;
            std::vector<long> xs;
            std::vector<mpz_class> ys;
            for (long xv = 0; static_cast<int>(xs.size()) < D + 1; ++xv) {
                for (long sx : {1L, -1L}) {
                    if (xv == 0 && sx == -1) continue;
                    long xpt = sx * xv;
                    // P(Y) = ma(xpt - m Y)
                    IntPolynomial t;
                    t.c = {mpz_class(xpt), mpz_class(-m)};
                    IntPolynomial P;
                    for (int i = ma.degree(); i >= 0; --i) {
                        P = P * t;
                        P = P + IntPolynomial::constant(ma.coeff(i));
                    }
                    xs.push_back(xpt);
                    ys.push_back(resultant(mb, P));
                    if (static_cast<int>(xs.size()) == D + 1) break;
                }
            }
            IntPolynomial R = interpolate_integer(xs, ys);
            if (R.degree() != D || !R.is_monic()) continue;
            if (squarefree_part(R).degree() != R.degree()) continue;

            // theta ball = theta_a + m*theta_b
            long e = -64;
            ComplexBall tb = cb_add(Fa->theta_ball(e), cb_scale_mpq(Fb->theta_ball(e), mpq_class(m)));

            auto factors = poly_factor(R);
            // identify the factor vanishing on tb
            const IntPolynomial* chosen = nullptr;
            while (true) {
                int count = 0;
                const IntPolynomial* cand = nullptr;
                for (auto& [f, mult] : factors) {
                    ComplexBall v = f.eval_ball(tb);
                    if (v.contains_zero()) {
                        ++count;
                        cand = &f;
                    }
                }
                if (count == 1) {
                    chosen = cand;
                    break;
                }
                e -= 64;
                if (-e > config().max_prec) throw PrecisionExhausted(config().max_prec);
                tb = cb_add(Fa->theta_ball(e), cb_scale_mpq(Fb->theta_ball(e), mpq_class(m)));
            }
            // isolate tb among chosen's roots
            {
                auto roots = isolate_roots(*chosen);
                int hits = 0;
                while (true) {
                    hits = 0;
                    for (auto& r : roots)
                        if (r.ball.overlaps(tb)) ++hits;
                    if (hits == 1) break;
                    e -= 64;
                    if (-e > config().max_prec) throw PrecisionExhausted(config().max_prec);
                    tb = cb_add(Fa->theta_ball(e), cb_scale_mpq(Fb->theta_ball(e), mpq_class(m)));
                }
            }
            FieldPtr F = NumberField::create(*chosen, tb);

            // express theta_b inside F: gcd(mb(Y), ma(theta - m Y)) over F[Y]
            AlgebraicNumber theta = AlgebraicNumber::generator(F);
            FPoly mbF;
            for (const auto& v : mb.c) mbF.c.push_back(lift_rational(mpq_class(v), F));
            mbF.normalize();
            FPoly shifted;  // ma(theta - m Y)
            {
                FPoly t;
                t.c = {theta, lift_rational(mpq_class(-m), F)};
                for (int i = ma.degree(); i >= 0; --i) {
                    shifted = shifted * t;
                    shifted = shifted + FPoly::constant(lift_rational(mpq_class(ma.coeff(i)), F));
                }
            }
            FPoly g = poly_gcd_field(mbF, shifted);
            if (g.degree() != 1) continue;  // m did not separate; try the next shift
            AlgebraicNumber theta_b_img = -(g.c[0] / g.c[1]);
            AlgebraicNumber theta_a_img =
                add_same_field(theta, -(theta_b_img * m), false);
            // consistency: images must sit on the original embeddings
            {
                ComplexBall ia = theta_a_img.ball(-64);
                ComplexBall ib = theta_b_img.ball(-64);
                if (!ia.overlaps(Fa->theta_ball(-64)) || !ib.overlaps(Fb->theta_ball(-64)))
                    throw CertificationError("field_compose: embedding mismatch");
            }
            return {F, map_through(x, theta_a_img), map_through(y, theta_b_img)};
        }
    }
    throw Error("field_compose: no separating shift found");
}

std::pair<FieldPtr, std::vector<AlgebraicNumber>>
to_common_field(const std::vector<AlgebraicNumber>& xs) {
    if (xs.empty()) return {NumberField::rationals(), {}};
    FieldPtr F = xs[0].field();
    std::vector<AlgebraicNumber> imgs{xs[0]};
    for (size_t i = 1; i < xs.size(); ++i) {
        AlgebraicNumber cur = AlgebraicNumber::generator(F);
        if (F->compatible(*xs[i].field())) {
            imgs.push_back(AlgebraicNumber::from_coords(F, xs[i].coords()));
            continue;
        }
        Composite c = field_compose(cur, xs[i]);
        if (c.field.get() != F.get()) {
            // re-map accumulated images through the theta image
            for (auto& v : imgs) v = map_through(v, c.a);
            F = c.field;
        }
        imgs.push_back(c.b);
    }
    return {F, imgs};
}

std::optional<AlgebraicNumber> try_express_in(const AlgebraicNumber& a, const FieldPtr& F) {
    if (a.is_rational()) return lift_rational(a.rational_value(), F);
    if (a.field()->compatible(*F)) return AlgebraicNumber::from_coords(F, a.coords());
    if (F->is_rational_field()) return std::nullopt;
    IntPolynomial m = an_minpoly(a);
    if (F->degree() % m.degree() != 0) return std::nullopt;
    auto roots_in_F = field_poly_roots(m, F);
    if (roots_in_F.empty()) return std::nullopt;
    auto all_roots = isolate_roots(m);
    int target = locate_root(a, m, all_roots);
    for (const auto& r : roots_in_F) {
        if (locate_root(r, m, all_roots) == target) return r;
    }
    return std::nullopt;
}

/* ---------------- roots on a fixed branch ---------------- */

AlgebraicNumber nth_root(const AlgebraicNumber& beta, unsigned long q,
                         const ComplexBall& lambda) {
    if (beta.is_zero()) throw DivisionByZero();
    if (q == 0) throw Error("nth_root: q must be positive");
    // certification of the branch: exp(lambda) must meet beta's ball
    {
        ComplexBall eb = cb_exp(lambda);
        ComplexBall bb = beta.ball(-64);
        if (bb.separated_from(eb))
            throw CertificationError("nth_root: lambda is not a logarithm of beta");
    }
    if (q == 1) return beta;

    IntPolynomial m = an_minpoly(beta);
    IntPolynomial M = m.inflate(static_cast<int>(q));
    ComplexBall target = cb_exp(cb_scale_mpq(lambda, mpq_class(1, static_cast<long>(q))));

    // locate the coherent root among the roots of M
    auto roots = isolate_roots(M);
    std::vector<size_t> live;
    for (size_t i = 0; i < roots.size(); ++i) live.push_back(i);
    long e = -64;
    while (live.size() > 1) {
        std::vector<size_t> next;
        for (size_t i : live)
            if (roots[i].ball.overlaps(target)) next.push_back(i);
        if (next.size() == 1) {
            live = next;
            break;
        }
        if (next.empty()) throw CertificationError("nth_root: no root matches the branch");
        e -= 64;
        if (-e > config().max_prec) throw PrecisionExhausted(config().max_prec);
        for (size_t i : next) roots[i].ball = refine_root(M, roots[i].ball, e);
        live = next;
    }
    if (live.empty()) throw CertificationError("nth_root: no root matches the branch");
    ComplexBall rb = roots[live[0]].ball;

    // find the irreducible factor having rb as a root
    IntPolynomial factor;
    if (irreducible_with_fast_paths(M)) {
        factor = M.primitive_part();
    } else {
        auto fac = poly_factor(M);
        long ee = -64;
        while (true) {
            int count = 0;
            const IntPolynomial* cand = nullptr;
            for (auto& [f, mult] : fac) {
                if (f.eval_ball(rb).contains_zero()) {
                    ++count;
                    cand = &f;
                }
            }
            if (count == 1) {
                factor = *cand;
                break;
            }
            ee -= 64;
            if (-ee > config().max_prec) throw PrecisionExhausted(config().max_prec);
            rb = refine_root(M, rb, ee);
        }
    }
    return AlgebraicNumber::from_minpoly_root(factor, rb);
}

} // namespace pexp
