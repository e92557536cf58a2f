#include "pexp/modp.hpp"
#include "pexp/error.hpp"

namespace pexp {
namespace modp {

uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
}

uint64_t sub(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

uint64_t mul(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t inv(uint64_t a, uint64_t p) {
    if (a % p == 0) throw DivisionByZero();
    return pow_mod(a, p - 2, p);
}

void normalize(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP reduce(const IntPolynomial& f, uint64_t p) {
    PolyP r;
    r.reserve(f.c.size());
    mpz_class pm = static_cast<unsigned long>(p);
    for (const auto& v : f.c) {
        mpz_class m = v % pm;
        if (m < 0) m += pm;
        r.push_back(m.get_ui());
    }
    normalize(r);
    return r;
}

IntPolynomial lift_symmetric(const PolyP& f, uint64_t p) {
    IntPolynomial r;
    for (uint64_t v : f) {
        mpz_class m = static_cast<unsigned long>(v);
        if (v > p / 2) m -= mpz_class(static_cast<unsigned long>(p));
        r.c.push_back(m);
    }
    r.normalize();
    return r;
}

PolyP pmul(const PolyP& a, const PolyP& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
    }
    normalize(r);
    return r;
}

void pdivmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r, uint64_t p) {
    if (b.empty()) throw DivisionByZero();
    q.clear();
    r = a;
    int db = degree(b);
    if (degree(a) < db) return;
    uint64_t li = inv(b.back(), p);
    q.assign(a.size() - b.size() + 1, 0);
    while (!r.empty() && degree(r) >= db) {
        int k = degree(r) - db;
        uint64_t f = mul(r.back(), li, p);
        q[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= db; ++i)
            r[static_cast<size_t>(i + k)] =
                sub(r[static_cast<size_t>(i + k)], mul(f, b[static_cast<size_t>(i)], p), p);
        normalize(r);
    }
    normalize(q);
}

PolyP pmod(const PolyP& a, const PolyP& b, uint64_t p) {
    PolyP q, r;
    pdivmod(a, b, q, r, p);
    return r;
}

PolyP pmonic(const PolyP& f, uint64_t p) {
    if (f.empty()) return f;
    PolyP r = f;
    uint64_t li = inv(r.back(), p);
    for (auto& v : r) v = mul(v, li, p);
    return r;
}

PolyP pgcd(PolyP a, PolyP b, uint64_t p) {
    while (!b.empty()) {
        PolyP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a, p);
}

PolyP pderiv(const PolyP& f, uint64_t p) {
    PolyP d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], i % p, p));
    normalize(d);
    return d;
}

PolyP ppow_mod(const PolyP& base, const mpz_class& e, const PolyP& mod, uint64_t p) {
    PolyP acc{1};
    PolyP b = pmod(base, mod, p);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = pmod(pmul(acc, b, p), mod, p);
        k >>= 1;
        if (k > 0) b = pmod(pmul(b, b, p), mod, p);
    }
    return acc;
}

bool is_squarefree(const PolyP& f, uint64_t p) {
    PolyP d = pderiv(f, p);
    if (d.empty()) return degree(f) <= 0;
    return degree(pgcd(f, d, p)) == 0;
}

/* deterministic splittable pseudo-randomness for EDF */
namespace {
struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 16;
    }
};
} // namespace

/* equal-degree splitting of a monic squarefree product of degree-d irreducibles */
static void edf(const PolyP& f, int d, uint64_t p, Lcg& rng,
                std::vector<PolyP>& out) {
    int n = degree(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    PolyP g;
    while (true) {
        // random h of degree < n
        PolyP h(static_cast<size_t>(n), 0);
        for (auto& v : h) v = rng.next() % p;
        normalize(h);
        if (h.empty() || degree(h) < 1) continue;
        if (p == 2) {
            // trace map over F_{2^d}: h + h^2 + h^4 + ... + h^{2^(d-1)}
            PolyP t = h, acc = h;
            for (int i = 1; i < d; ++i) {
                t = pmod(pmul(t, t, p), f, p);
                if (acc.size() < t.size()) acc.resize(t.size(), 0);
                for (size_t k = 0; k < t.size(); ++k) acc[k] = add(acc[k], t[k], p);
                normalize(acc);
            }
            g = pgcd(f, acc, p);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            PolyP t = ppow_mod(h, e, f, p);
            if (!t.empty()) t[0] = sub(t[0], 1, p);
            normalize(t);
            g = pgcd(f, t, p);
        }
        if (degree(g) > 0 && degree(g) < n) break;
    }
    PolyP q, r;
    pdivmod(f, g, q, r, p);
    edf(g, d, p, rng, out);
    edf(pmonic(q, p), d, p, rng, out);
}

std::vector<std::pair<PolyP, int>> factor(const PolyP& f_in, uint64_t p) {
    std::vector<std::pair<PolyP, int>> out;
    PolyP f = pmonic(f_in, p);
    if (degree(f) <= 0) return out;

    // squarefree decomposition (handles p-th powers via Frobenius)
    std::vector<std::pair<PolyP, int>> sqf;
    std::vector<std::pair<PolyP, int>> stack{{f, 1}};
    while (!stack.empty()) {
        auto [g, m] = stack.back();
        stack.pop_back();
        if (degree(g) <= 0) continue;
        PolyP d = pderiv(g, p);
        if (is_zero(d)) {
            // g = h(X^p) = h(X)^p over F_p
            PolyP h;
            for (size_t i = 0; i < g.size(); i += static_cast<size_t>(p)) h.push_back(g[i]);
            normalize(h);
            stack.push_back({h, m * static_cast<int>(p)});
            continue;
        }
        PolyP c = pgcd(g, d, p);
        PolyP w;
        {
            PolyP q, r;
            pdivmod(g, c, q, r, p);
            w = pmonic(q, p);
        }
        int mult = 1;
        while (degree(w) > 0) {
            PolyP y = pgcd(w, c, p);
            PolyP z;
            {
                PolyP q, r;
                pdivmod(w, y, q, r, p);
                z = pmonic(q, p);
            }
            if (degree(z) > 0) sqf.push_back({z, m * mult});
            {
                PolyP q, r;
                pdivmod(c, y, q, r, p);
                c = pmonic(q, p);
            }
            w = y;
            ++mult;
        }
        if (degree(c) > 0) stack.push_back({c, m});
    }

    // distinct-degree then equal-degree on each squarefree part
    Lcg rng(0x9e3779b97f4a7c15ULL ^ p);
    for (auto& [g0, mult] : sqf) {
        PolyP g = g0;
        PolyP xp{0, 1};  // X
        PolyP h = xp;
        int d = 0;
        while (degree(g) > 0) {
            ++d;
            if (2 * d > degree(g)) {
                out.push_back({g, mult});
                break;
            }
            h = ppow_mod(h, mpz_class(static_cast<unsigned long>(p)), g, p);
            // gcd(h - X, g)
            PolyP hx = h;
            if (hx.size() < 2) hx.resize(2, 0);
            hx[1] = sub(hx[1], 1, p);
            normalize(hx);
            PolyP gd = pgcd(g, hx, p);
            if (degree(gd) > 0) {
                std::vector<PolyP> irr;
                edf(gd, d, p, rng, irr);
                for (auto& q : irr) out.push_back({q, mult});
                PolyP q, r;
                pdivmod(g, gd, q, r, p);
                g = pmonic(q, p);
                h = pmod(h, g, p);
            }
        }
    }
    return out;
}

bool is_irreducible(const PolyP& f_in, uint64_t p) {
    PolyP f = pmonic(f_in, p);
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (!is_squarefree(f, p)) return false;
    // x^{p^n} == x mod f and gcd(x^{p^{n/q}} - x, f) == 1 for prime q | n
    PolyP h{0, 1};
    std::vector<int> prime_divs;
    int m = n;
    for (int q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            prime_divs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) prime_divs.push_back(m);
    // iterate Frobenius
    std::vector<PolyP> frob(static_cast<size_t>(n) + 1);
    frob[0] = h;
    for (int i = 1; i <= n; ++i)
        frob[static_cast<size_t>(i)] =
            ppow_mod(frob[static_cast<size_t>(i - 1)], mpz_class(static_cast<unsigned long>(p)), f, p);
    auto minus_x_gcd_trivial = [&](const PolyP& t) {
        PolyP s = t;
        if (s.size() < 2) s.resize(2, 0);
        s[1] = sub(s[1], 1, p);
        normalize(s);
        return degree(pgcd(f, s, p)) == 0;
    };
    {
        PolyP s = frob[static_cast<size_t>(n)];
        if (s.size() < 2) s.resize(2, 0);
        s[1] = sub(s[1], 1, p);
        normalize(s);
        if (!is_zero(s)) return false;
    }
    for (int q : prime_divs) {
        if (!minus_x_gcd_trivial(frob[static_cast<size_t>(n / q)])) return false;
    }
    return true;
}

} // namespace modp
} // namespace pexp
