#include "pexp/intpoly.hpp"
#include "pexp/error.hpp"

#include <sstream>

namespace pexp {

mpz_class IntPolynomial::content() const {
    mpz_class g = 0;
    for (const auto& v : c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lc() < 0) g = -g;
    IntPolynomial p = *this;
    for (auto& v : p.c) v /= g;
    return p;
}

mpz_class IntPolynomial::height() const {
    mpz_class h = 0;
    for (const auto& v : c) {
        mpz_class a = abs(v);
        if (a > h) h = a;
    }
    return h;
}

mpq_class IntPolynomial::eval_mpq(const mpq_class& x) const {
    mpq_class acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + mpq_class(c[static_cast<size_t>(i)]);
    return acc;
}

mpz_class IntPolynomial::eval_mpz(const mpz_class& x) const {
    mpz_class acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
    return acc;
}

ComplexBall IntPolynomial::eval_ball(const ComplexBall& x) const {
    ComplexBall acc = ComplexBall::exact_si(0, x.prec());
    for (int i = degree(); i >= 0; --i) {
        acc = cb_mul(acc, x);
        acc = cb_add(acc, ComplexBall::from_mpq(mpq_class(c[static_cast<size_t>(i)]), 0, x.prec()));
    }
    return acc;
}

RealBall IntPolynomial::eval_real_ball(const RealBall& x) const {
    RealBall acc = RealBall::exact_si(0, x.prec());
    for (int i = degree(); i >= 0; --i) {
        acc = rb_mul(acc, x);
        acc = rb_add(acc, RealBall::exact_mpz(c[static_cast<size_t>(i)], x.prec()));
    }
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    IntPolynomial d;
    for (int i = 1; i <= degree(); ++i) d.c.push_back(c[static_cast<size_t>(i)] * i);
    d.normalize();
    return d;
}

IntPolynomial IntPolynomial::inflate(int k) const {
    if (is_zero()) return {};
    IntPolynomial r;
    r.c.assign(static_cast<size_t>(degree()) * k + 1, mpz_class(0));
    for (int i = 0; i <= degree(); ++i) r.c[static_cast<size_t>(i) * k] = c[static_cast<size_t>(i)];
    return r;
}

std::string IntPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& v = c[static_cast<size_t>(i)];
        if (v == 0) continue;
        mpz_class a = abs(v);
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), mpz_class(0));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), mpz_class(0));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

IntPolynomial operator-(const IntPolynomial& a) {
    IntPolynomial r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPolynomial r;
    r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

IntPolynomial operator*(const mpz_class& s, const IntPolynomial& a) {
    if (s == 0) return {};
    IntPolynomial r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return {};
    IntPolynomial r = a, q;
    int db = b.degree();
    if (a.degree() < db) throw Error("exact_div: not divisible (degree)");
    q.c.assign(static_cast<size_t>(a.degree() - db) + 1, mpz_class(0));
    while (!r.is_zero() && r.degree() >= db) {
        mpz_class f, rem;
        mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r.lc().get_mpz_t(), b.lc().get_mpz_t());
        if (rem != 0) throw Error("exact_div: not divisible (leading coefficient)");
        int k = r.degree() - db;
        q.c[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= db; ++i)
            r.c[static_cast<size_t>(i + k)] -= f * b.c[static_cast<size_t>(i)];
        r.normalize();
    }
    if (!r.is_zero()) throw Error("exact_div: nonzero remainder");
    q.normalize();
    return q;
}

bool divides(const IntPolynomial& b, const IntPolynomial& a) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    IntPolynomial r = a;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        mpz_class f, rem;
        mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r.lc().get_mpz_t(), b.lc().get_mpz_t());
        if (rem != 0) return false;
        int k = r.degree() - db;
        for (int i = 0; i <= db; ++i)
            r.c[static_cast<size_t>(i + k)] -= f * b.c[static_cast<size_t>(i)];
        r.normalize();
    }
    return r.is_zero();
}

void pseudo_divmod(const IntPolynomial& a, const IntPolynomial& b,
                   IntPolynomial& q, IntPolynomial& r) {
    if (b.is_zero()) throw DivisionByZero();
    q = {};
    r = a;
    int db = b.degree();
    if (a.degree() < db) return;
    int steps = a.degree() - db + 1;
    const mpz_class& lb = b.lc();
    q.c.assign(static_cast<size_t>(steps), mpz_class(0));
    for (int s = 0; s < steps; ++s) {
        if (r.is_zero() || r.degree() < db) {
            // multiply the rest through to keep the pseudo-division identity
            for (auto& v : q.c) v *= lb;
            r = lb * r;
            continue;
        }
        int k = r.degree() - db;
        mpz_class f = r.lc();
        for (auto& v : q.c) v *= lb;
        q.c[static_cast<size_t>(k)] += f;
        r = lb * r;
        for (int i = 0; i <= db; ++i)
            r.c[static_cast<size_t>(i + k)] -= f * b.c[static_cast<size_t>(i)];
        r.normalize();
    }
    q.normalize();
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    // primitive gcd with positive leading coefficient
    if (a.is_zero()) return b.is_zero() ? IntPolynomial{} : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPolynomial f = a.primitive_part(), g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        IntPolynomial q, r;
        pseudo_divmod(f, g, q, r);
        f = g;
        g = r.is_zero() ? IntPolynomial{} : r.primitive_part();
    }
    return f.primitive_part();
}

static mpz_class zpow(const mpz_class& b, int e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
    // Cohen, Algorithm 3.3.7 (resultant via subresultant PRS)
    if (a.is_zero() || b.is_zero()) return 0;
    IntPolynomial A = a, B = b;
    mpz_class ca = A.content(), cb = B.content();
    for (auto& v : A.c) v /= ca;
    for (auto& v : B.c) v /= cb;
    mpz_class s = 1;
    mpz_class t = zpow(ca, B.degree()) * zpow(cb, A.degree());
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        std::swap(A, B);
    }
    if (B.degree() == 0) return s * t * zpow(B.c[0], A.degree());
    mpz_class g = 1, h = 1;
    while (true) {
        int dA = A.degree(), dB = B.degree();
        int delta = dA - dB;
        if ((dA & 1) && (dB & 1)) s = -s;
        IntPolynomial q, r;
        pseudo_divmod(A, B, q, r);
        A = B;
        if (r.is_zero()) return 0;  // positive-degree common factor
        mpz_class div = g * zpow(h, delta);
        for (auto& v : r.c) v /= div;
        B = r;
        g = A.lc();
        if (delta > 0) h = zpow(g, delta) / zpow(h, delta - 1);
        if (B.degree() == 0) {
            int dA2 = A.degree();
            mpz_class hh = (dA2 == 0) ? h : zpow(B.c[0], dA2) / zpow(h, dA2 - 1);
            return s * t * hh;
        }
    }
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.is_zero()) return {};
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive_part();
    return exact_div(p.primitive_part(), g).primitive_part();
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
    // Yun's algorithm on the primitive part
    std::vector<std::pair<IntPolynomial, int>> out;
    IntPolynomial f = p.primitive_part();
    if (f.degree() <= 0) return out;
    IntPolynomial fp = f.derivative();
    IntPolynomial a = poly_gcd(f, fp);
    IntPolynomial b = exact_div(f, a);
    IntPolynomial c = exact_div(fp, a);
    IntPolynomial d = c - b.derivative();
    int mult = 1;
    while (b.degree() > 0) {
        IntPolynomial g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g.primitive_part(), mult);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++mult;
    }
    return out;
}

QPoly to_qpoly(const IntPolynomial& p) {
    QPoly q;
    for (const auto& v : p.c) q.c.emplace_back(v);
    q.normalize();
    return q;
}

IntPolynomial to_intpoly_primitive(const QPoly& p) {
    mpz_class den = 1;
    for (const auto& v : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    IntPolynomial r;
    for (const auto& v : p.c) {
        mpq_class s = v * mpq_class(den);
        r.c.push_back(s.get_num());
    }
    r.normalize();
    return r.is_zero() ? r : r.primitive_part();
}

} // namespace pexp
