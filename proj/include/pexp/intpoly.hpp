#ifndef PEXP_INTPOLY_HPP
#define PEXP_INTPOLY_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "pexp/ball.hpp"

namespace pexp {

/* Dense univariate polynomial over Z. Coefficients are stored constant
 * term first; the zero polynomial has an empty coefficient vector. */
class IntPolynomial {
public:
    std::vector<mpz_class> c;

    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c.emplace_back(v);
        normalize();
    }
    static IntPolynomial from_coeffs(std::vector<mpz_class> coeffs) {
        IntPolynomial p;
        p.c = std::move(coeffs);
        p.normalize();
        return p;
    }
    static IntPolynomial x_power(int k) {
        IntPolynomial p;
        p.c.assign(static_cast<size_t>(k) + 1, mpz_class(0));
        p.c.back() = 1;
        return p;
    }
    static IntPolynomial constant(const mpz_class& v) {
        IntPolynomial p;
        if (v != 0) p.c.push_back(v);
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lc() const { return c.back(); }
    const mpz_class& coeff(int i) const {
        static const mpz_class z0 = 0;
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : z0;
    }
    bool operator==(const IntPolynomial& o) const { return c == o.c; }
    bool operator!=(const IntPolynomial& o) const { return c != o.c; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    mpz_class content() const;          // gcd of coefficients, >= 0
    IntPolynomial primitive_part() const;  // content 1, positive leading coeff
    mpz_class height() const;           // max |coefficient|

    mpq_class eval_mpq(const mpq_class& x) const;
    mpz_class eval_mpz(const mpz_class& x) const;
    ComplexBall eval_ball(const ComplexBall& x) const;
    RealBall eval_real_ball(const RealBall& x) const;

    IntPolynomial derivative() const;
    /* p(X^k) */
    IntPolynomial inflate(int k) const;
    /* a^(deg p - ...) scaled composition p(a X) etc. are provided by callers */

    std::string str(const std::string& var = "X") const;
};

IntPolynomial operator+(const IntPolynomial&, const IntPolynomial&);
IntPolynomial operator-(const IntPolynomial&, const IntPolynomial&);
IntPolynomial operator*(const IntPolynomial&, const IntPolynomial&);
IntPolynomial operator*(const mpz_class&, const IntPolynomial&);
IntPolynomial operator-(const IntPolynomial&);

/* exact division; throws if not divisible */
IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b);
bool divides(const IntPolynomial& b, const IntPolynomial& a);  // b | a
/* pseudo-division: lc(b)^(da-db+1) a = q b + r */
void pseudo_divmod(const IntPolynomial& a, const IntPolynomial& b,
                   IntPolynomial& q, IntPolynomial& r);
/* gcd over Z, primitive with positive leading coefficient */
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);
/* resultant over Z (subresultant PRS) */
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);
/* squarefree part: p / gcd(p, p'), primitive */
IntPolynomial squarefree_part(const IntPolynomial& p);
/* Yun squarefree decomposition: list of (factor, multiplicity) */
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

/* ------------------------------------------------------------------ */
/* Generic dense polynomial over a field type K. K must provide the
 * usual operators, and k_is_zero / k_zero_like / k_inv overloads. */

inline bool k_is_zero(const mpq_class& x) { return x == 0; }
inline mpq_class k_zero_like(const mpq_class&) { return mpq_class(0); }
inline mpq_class k_inv(const mpq_class& x) { return mpq_class(1) / x; }

template <class K>
struct Poly {
    std::vector<K> c;  // constant term first, normalized

    void normalize() {
        while (!c.empty() && k_is_zero(c.back())) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const K& lc() const { return c.back(); }

    static Poly constant(const K& v) {
        Poly p;
        if (!k_is_zero(v)) p.c.push_back(v);
        return p;
    }

    K eval(const K& x) const {
        if (c.empty()) return k_zero_like(x);
        K acc = c.back();
        for (int i = degree() - 1; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
        return acc;
    }

    Poly derivative() const {
        Poly d;
        for (int i = 1; i <= degree(); ++i)
            d.c.push_back(c[static_cast<size_t>(i)] * static_cast<long>(i));
        d.normalize();
        return d;
    }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), k_zero_like(b.c[0]));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    r.normalize();
    return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), k_zero_like(b.c[0]));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    r.normalize();
    return r;
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, k_zero_like(a.c[0]));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    r.normalize();
    return r;
}

template <class K>
Poly<K> scale(const Poly<K>& a, const K& s) {
    Poly<K> r = a;
    for (auto& x : r.c) x = x * s;
    r.normalize();
    return r;
}

/* division in K[X]; throws on zero divisor via k_inv of zero upstream */
template <class K>
void poly_divmod(const Poly<K>& a, const Poly<K>& b, Poly<K>& q, Poly<K>& r) {
    q = Poly<K>{};
    r = a;
    K lcb_inv = k_inv(b.lc());
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        K f = r.lc() * lcb_inv;
        if (q.c.size() < static_cast<size_t>(k) + 1) q.c.resize(static_cast<size_t>(k) + 1, k_zero_like(f));
        q.c[static_cast<size_t>(k)] = q.c[static_cast<size_t>(k)] + f;
        for (int i = 0; i <= db; ++i) {
            r.c[static_cast<size_t>(i + k)] =
                r.c[static_cast<size_t>(i + k)] - f * b.c[static_cast<size_t>(i)];
        }
        r.normalize();
    }
    q.normalize();
}

template <class K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> q, r;
    poly_divmod(a, b, q, r);
    return r;
}

/* monic gcd in K[X] */
template <class K>
Poly<K> poly_gcd_field(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = poly_mod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = scale(a, k_inv(a.lc()));
    return a;
}

using QPoly = Poly<mpq_class>;

QPoly to_qpoly(const IntPolynomial& p);
/* clears denominators; returns primitive integer polynomial with positive lc */
IntPolynomial to_intpoly_primitive(const QPoly& p);

} // namespace pexp

#endif
