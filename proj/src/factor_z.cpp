#include "pexp/factor_z.hpp"
#include "pexp/config.hpp"
#include "pexp/error.hpp"
#include "pexp/intfactor.hpp"
#include "pexp/modp.hpp"

#include <algorithm>
#include <numeric>

namespace pexp {

/* ---------- arithmetic mod m (mpz modulus), symmetric representatives ---------- */

namespace {

struct ZmPoly {
    std::vector<mpz_class> c;  // reduced into [0, m)
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

ZmPoly zm_from(const IntPolynomial& f, const mpz_class& m) {
    ZmPoly r;
    for (const auto& v : f.c) {
        mpz_class x = v % m;
        if (x < 0) x += m;
        r.c.push_back(x);
    }
    r.normalize();
    return r;
}

IntPolynomial zm_lift_symmetric(const ZmPoly& f, const mpz_class& m) {
    IntPolynomial r;
    mpz_class half = m / 2;
    for (const auto& v : f.c) r.c.push_back(v > half ? v - m : v);
    r.normalize();
    return r;
}

ZmPoly zm_mul(const ZmPoly& a, const ZmPoly& b, const mpz_class& m) {
    ZmPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    for (auto& v : r.c) {
        v %= m;
        if (v < 0) v += m;
    }
    r.normalize();
    return r;
}

ZmPoly zm_add(const ZmPoly& a, const ZmPoly& b, const mpz_class& m) {
    ZmPoly r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), mpz_class(0));
    for (size_t i = 0; i < b.c.size(); ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= m) r.c[i] -= m;
    }
    r.normalize();
    return r;
}

ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const mpz_class& m) {
    ZmPoly r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), mpz_class(0));
    for (size_t i = 0; i < b.c.size(); ++i) {
        r.c[i] -= b.c[i];
        if (r.c[i] < 0) r.c[i] += m;
    }
    r.normalize();
    return r;
}

/* division by a monic divisor */
void zm_divmod_monic(const ZmPoly& a, const ZmPoly& b, ZmPoly& q, ZmPoly& r,
                     const mpz_class& m) {
    q.c.clear();
    r = a;
    int db = b.degree();
    if (a.degree() < db) return;
    q.c.assign(static_cast<size_t>(a.degree() - db) + 1, mpz_class(0));
    while (!r.c.empty() && r.degree() >= db) {
        int k = r.degree() - db;
        mpz_class f = r.c.back();
        q.c[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= db; ++i) {
            mpz_class& t = r.c[static_cast<size_t>(i + k)];
            t -= f * b.c[static_cast<size_t>(i)];
            t %= m;
            if (t < 0) t += m;
        }
        r.normalize();
    }
    q.normalize();
}

/* one quadratic Hensel step: (f = g*h, s*g + t*h = 1) mod m  ->  mod m^2.
 * h monic; all polys reduced mod m^2 on exit. */
void hensel_step(const IntPolynomial& f, ZmPoly& g, ZmPoly& h, ZmPoly& s, ZmPoly& t,
                 const mpz_class& m) {
    mpz_class m2 = m * m;
    ZmPoly fz = zm_from(f, m2);
    ZmPoly e = zm_sub(fz, zm_mul(g, h, m2), m2);
    ZmPoly q, r;
    zm_divmod_monic(zm_mul(s, e, m2), h, q, r, m2);
    ZmPoly g2 = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(q, g, m2), m2);
    ZmPoly h2 = zm_add(h, r, m2);
    // lift the Bezout pair
    ZmPoly one;
    one.c.push_back(1);
    ZmPoly b = zm_sub(zm_add(zm_mul(s, g2, m2), zm_mul(t, h2, m2), m2), one, m2);
    ZmPoly c, d;
    zm_divmod_monic(zm_mul(s, b, m2), h2, c, d, m2);
    ZmPoly s2 = zm_sub(s, d, m2);
    ZmPoly t2 = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(c, g2, m2), m2);
    g = g2;
    h = h2;
    s = s2;
    t = t2;
}

/* multifactor Hensel lifting (recursion tree). f monic, factors monic mod p,
 * pairwise coprime; returns factors mod target (>= needed bound). */
std::vector<ZmPoly> hensel_lift_tree(const IntPolynomial& f,
                                     const std::vector<modp::PolyP>& factors,
                                     uint64_t p, const mpz_class& target) {
    if (factors.size() == 1) {
        return {zm_from(f, target)};
    }
    size_t half = factors.size() / 2;
    // g = product of left factors mod p, h = product of right factors mod p
    modp::PolyP gp{1}, hp{1};
    for (size_t i = 0; i < half; ++i) gp = modp::pmul(gp, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) hp = modp::pmul(hp, factors[i], p);
    // Bezout s*g + t*h = 1 mod p via extended Euclid
    modp::PolyP s, t;
    {
        modp::PolyP r0 = gp, r1 = hp;
        modp::PolyP s0{1}, s1{}, t0{}, t1{1};
        while (!modp::is_zero(r1)) {
            modp::PolyP q, r;
            modp::pdivmod(r0, r1, q, r, p);
            modp::PolyP s2 = s0, t2 = t0;
            // s2 = s0 - q*s1 ; t2 = t0 - q*t1
            modp::PolyP qs = modp::pmul(q, s1, p), qt = modp::pmul(q, t1, p);
            if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
            for (size_t i = 0; i < qs.size(); ++i) s2[i] = modp::sub(s2[i], qs[i], p);
            modp::normalize(s2);
            if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
            for (size_t i = 0; i < qt.size(); ++i) t2[i] = modp::sub(t2[i], qt[i], p);
            modp::normalize(t2);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd (a unit); scale
        if (modp::degree(r0) != 0) throw Error("hensel: modular factors not coprime");
        uint64_t iv = modp::inv(r0[0], p);
        for (auto& v : s0) v = modp::mul(v, iv, p);
        for (auto& v : t0) v = modp::mul(v, iv, p);
        s = s0;
        t = t0;
    }
    // iterate quadratic steps until modulus >= target
    mpz_class m = static_cast<unsigned long>(p);
    auto to_zm = [&](const modp::PolyP& f0) {
        ZmPoly z;
        for (uint64_t v : f0) z.c.push_back(static_cast<unsigned long>(v));
        z.normalize();
        return z;
    };
    ZmPoly g = to_zm(gp), h = to_zm(hp), sz = to_zm(s), tz = to_zm(t);
    while (m < target) {
        hensel_step(f, g, h, sz, tz, m);
        m = m * m;
    }
    // recurse on both halves: g*h = f mod m with m >= target
    IntPolynomial gi = zm_lift_symmetric(g, m);
    IntPolynomial hi = zm_lift_symmetric(h, m);
    std::vector<modp::PolyP> lf(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<modp::PolyP> rf(factors.begin() + static_cast<long>(half), factors.end());
    // children get the lifted g, h as their integer models (monic by construction)
    std::vector<ZmPoly> left = hensel_lift_tree(gi, lf, p, target);
    std::vector<ZmPoly> right = hensel_lift_tree(hi, rf, p, target);
    // reduce children into the common target modulus representation
    std::vector<ZmPoly> out;
    for (auto& z : left) out.push_back(z);
    for (auto& z : right) out.push_back(z);
    return out;
}

/* Mignotte-style coefficient bound for monic factors of monic f */
mpz_class factor_coeff_bound(const IntPolynomial& f) {
    mpz_class norm2 = 0;
    for (const auto& v : f.c) norm2 += v * v;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
    s += 1;
    mpz_class b = s << static_cast<unsigned>(f.degree() + 1);
    return b;
}

bool eisenstein_irreducible(const IntPolynomial& f) {
    if (f.degree() < 2) return f.degree() == 1;
    mpz_class g = 0;
    for (int i = 0; i < f.degree(); ++i)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.coeff(i).get_mpz_t());
    if (g <= 1) return false;
    // check primes of g up to a small budget (g is tiny at desk scale)
    mpz_class gg = g;
    for (unsigned long p : small_primes()) {
        if (gg == 1) break;
        if (!mpz_divisible_ui_p(gg.get_mpz_t(), p)) continue;
        while (mpz_divisible_ui_p(gg.get_mpz_t(), p)) mpz_divexact_ui(gg.get_mpz_t(), gg.get_mpz_t(), p);
        if (mpz_divisible_ui_p(f.lc().get_mpz_t(), p)) continue;
        mpz_class p2 = mpz_class(p) * p;
        if (!mpz_divisible_p(f.coeff(0).get_mpz_t(), p2.get_mpz_t())) return true;
    }
    return false;
}

/* factor a primitive squarefree polynomial of degree >= 1 */
std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f_in) {
    IntPolynomial f = f_in.primitive_part();
    int n = f.degree();
    std::vector<IntPolynomial> out;
    if (n == 1) {
        out.push_back(f);
        return out;
    }
    if (eisenstein_irreducible(f)) {
        out.push_back(f);
        return out;
    }

    // monicize: F(X) = lc^(n-1) f(X/lc), monic with integer coefficients
    mpz_class lc = f.lc();
    IntPolynomial F;
    {
        F.c.assign(f.c.size(), mpz_class(0));
        mpz_class pw = 1;
        for (int i = n; i >= 0; --i) {
            F.c[static_cast<size_t>(i)] = f.c[static_cast<size_t>(i)] * pw;
            if (i > 0) pw *= lc;
        }
        F.normalize();
    }

    // prime selection: F squarefree mod p; keep the factorization with the
    // fewest modular factors among the first few usable primes
    std::vector<std::pair<modp::PolyP, int>> best;
    uint64_t best_p = 0;
    int tried = 0;
    for (unsigned long p : small_primes()) {
        if (p < 3) continue;
        if (mpz_divisible_ui_p(F.lc().get_mpz_t(), p)) continue;
        modp::PolyP fp = modp::reduce(F, p);
        if (modp::degree(fp) != n) continue;
        if (!modp::is_squarefree(fp, p)) continue;
        auto fac = modp::factor(fp, p);
        if (fac.size() == 1 && fac[0].second == 1) {
            out.push_back(f);  // irreducible certificate
            return out;
        }
        if (best_p == 0 || fac.size() < best.size()) {
            best.clear();
            for (auto& [g, m] : fac) {
                for (int i = 0; i < m; ++i) best.emplace_back(g, 1);
            }
            best_p = p;
        }
        if (++tried >= 4) break;
    }
    if (best_p == 0) throw Error("poly_factor: no usable prime found");
    if (n > config().factor_degree_cap)
        throw Error("poly_factor: degree " + std::to_string(n) +
                    " exceeds the Zassenhaus degree cap");

    std::vector<modp::PolyP> mods;
    for (auto& [g, m] : best) mods.push_back(g);

    mpz_class bound = factor_coeff_bound(F) * 2 + 1;
    std::vector<ZmPoly> lifted = hensel_lift_tree(F, mods, best_p, bound);
    mpz_class modulus = static_cast<unsigned long>(best_p);
    while (modulus < bound) modulus *= modulus;

    // subset recombination against F, mapping candidates back to factors of f
    std::vector<int> alive(lifted.size());
    std::iota(alive.begin(), alive.end(), 0);
    IntPolynomial remaining = f;

    auto candidate_from_subset = [&](const std::vector<int>& idx) {
        ZmPoly prod;
        prod.c.push_back(1);
        for (int i : idx) prod = zm_mul(prod, lifted[static_cast<size_t>(i)], modulus);
        IntPolynomial G = zm_lift_symmetric(prod, modulus);
        // back-transform: factor of f is pp(G(lc X))
        IntPolynomial Gl;
        Gl.c.assign(G.c.size(), mpz_class(0));
        mpz_class pw = 1;
        for (int i = 0; i <= G.degree(); ++i) {
            Gl.c[static_cast<size_t>(i)] = G.c[static_cast<size_t>(i)] * pw;
            pw *= lc;
        }
        Gl.normalize();
        return Gl.primitive_part();
    };

    size_t subset_size = 1;
    while (2 * subset_size <= alive.size()) {
        bool found = false;
        std::vector<int> comb(subset_size);
        // iterate combinations of `alive` of size subset_size
        std::vector<size_t> pos(subset_size);
        std::iota(pos.begin(), pos.end(), 0);
        while (true) {
            for (size_t i = 0; i < subset_size; ++i) comb[i] = alive[pos[i]];
            IntPolynomial cand = candidate_from_subset(comb);
            if (cand.degree() >= 1 && divides(cand, remaining)) {
                out.push_back(cand);
                remaining = exact_div(remaining, cand);
                std::vector<int> na;
                for (size_t i = 0, j = 0; i < alive.size(); ++i) {
                    if (j < subset_size && pos[j] == i) {
                        ++j;
                        continue;
                    }
                    na.push_back(alive[i]);
                }
                alive = na;
                found = true;
                break;
            }
            // next combination
            long k = static_cast<long>(subset_size) - 1;
            while (k >= 0 && pos[static_cast<size_t>(k)] ==
                                 alive.size() - subset_size + static_cast<size_t>(k))
                --k;
            if (k < 0) break;
            ++pos[static_cast<size_t>(k)];
            for (size_t i = static_cast<size_t>(k) + 1; i < subset_size; ++i)
                pos[i] = pos[i - 1] + 1;
        }
        if (!found) ++subset_size;
    }
    if (remaining.degree() >= 1) out.push_back(remaining.primitive_part());
    return out;
}

} // namespace

std::vector<std::pair<IntPolynomial, int>> poly_factor(const IntPolynomial& p) {
    if (p.is_zero()) throw Error("poly_factor: zero polynomial");
    std::vector<std::pair<IntPolynomial, int>> out;
    for (auto& [g, m] : squarefree_decomposition(p)) {
        for (auto& irr : factor_squarefree(g)) out.emplace_back(irr, m);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.c < b.first.c;
    });
    return out;
}

bool poly_is_irreducible(const IntPolynomial& p) {
    if (p.degree() < 1) return false;
    IntPolynomial pp = p.primitive_part();
    auto f = poly_factor(pp);
    return f.size() == 1 && f[0].second == 1 && f[0].first.degree() == pp.degree();
}

bool irreducible_with_fast_paths(const IntPolynomial& p) {
    int n = p.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    if (p.coeff(0) == 0) return false;  // X divides
    // rational root screen: p(a/b) = 0 needs a | c0, b | lc
    {
        std::vector<mpz_class> as, bs;
        mpz_class c0 = abs(p.coeff(0)), cl = abs(p.lc());
        // divisors via factorization (tiny numbers in the mass enumeration)
        auto divisors = [](const mpz_class& v) {
            std::vector<mpz_class> ds{1};
            for (auto& [q, e] : factor_integer(v)) {
                size_t old = ds.size();
                mpz_class pw = 1;
                for (int i = 1; i <= e; ++i) {
                    pw *= q;
                    for (size_t j = 0; j < old; ++j) ds.push_back(ds[j] * pw);
                }
            }
            return ds;
        };
        for (const auto& a : divisors(c0))
            for (const auto& b : divisors(cl)) {
                mpq_class r(a, b);
                r.canonicalize();
                if (p.eval_mpq(r) == 0) return false;
                if (p.eval_mpq(-r) == 0) return false;
            }
        if (n <= 3) return true;  // no rational root and degree <= 3
    }
    if (eisenstein_irreducible(p)) return true;
    // modular degree-pattern certificate
    uint64_t usable = 0;
    std::vector<bool> possible(static_cast<size_t>(n) + 1, true);  // possible proper factor degrees
    for (unsigned long q : {3UL, 5UL, 7UL, 11UL, 13UL, 17UL}) {
        if (mpz_divisible_ui_p(p.lc().get_mpz_t(), q)) continue;
        modp::PolyP fq = modp::reduce(p, q);
        if (modp::degree(fq) != n || !modp::is_squarefree(fq, q)) continue;
        ++usable;
        auto fac = modp::factor(fq, q);
        if (fac.size() == 1) return true;  // irreducible mod q
        // subset sums of modular factor degrees
        std::vector<bool> sums(static_cast<size_t>(n) + 1, false);
        sums[0] = true;
        for (auto& [g, m] : fac) {
            int d = modp::degree(g);
            for (int rep = 0; rep < m; ++rep) {
                for (int s = n - d; s >= 0; --s)
                    if (sums[static_cast<size_t>(s)]) sums[static_cast<size_t>(s + d)] = true;
            }
        }
        for (int d = 1; d < n; ++d)
            if (!sums[static_cast<size_t>(d)]) possible[static_cast<size_t>(d)] = false;
        bool any = false;
        for (int d = 1; d < n; ++d)
            if (possible[static_cast<size_t>(d)]) any = true;
        if (!any) return true;
        if (usable >= 3) break;
    }
    return poly_is_irreducible(p);
}

} // namespace pexp
