#include "pexp/numberfield.hpp"
#include "pexp/config.hpp"
#include "pexp/error.hpp"

#include <map>
#include <mutex>

namespace pexp {

IntPolynomial cyclotomic_poly(unsigned long q) {
    static std::map<unsigned long, IntPolynomial> cache;
    static std::mutex mu;
    if (q == 0) throw Error("cyclotomic_poly: q must be positive");
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    // Phi_q = (X^q - 1) / prod_{d | q, d < q} Phi_d  (recursively cached)
    std::function<IntPolynomial(unsigned long)> phi = [&](unsigned long n) -> IntPolynomial {
        auto i2 = cache.find(n);
        if (i2 != cache.end()) return i2->second;
        IntPolynomial num = IntPolynomial::x_power(static_cast<int>(n)) - IntPolynomial{1};
        for (unsigned long d = 1; d < n; ++d) {
            if (n % d == 0) num = exact_div(num, phi(d));
        }
        cache[n] = num;
        return num;
    };
    return phi(q);
}

AlgebraicNumber cyclotomic_root(unsigned long q) {
    if (q == 0) throw Error("cyclotomic_root: q must be positive");
    if (q == 1) return AlgebraicNumber::from_int(1);
    if (q == 2) return AlgebraicNumber::from_int(-1);
    IntPolynomial phi = cyclotomic_poly(q);
    ComplexBall b = cb_unit_root(mpq_class(1, static_cast<long>(q)), 128);
    return AlgebraicNumber::from_minpoly_root(phi, b);
}

static unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

bool is_root_of_unity(const AlgebraicNumber& a, unsigned long* order) {
    if (a.is_zero()) return false;
    if (a.is_rational()) {
        if (a.rational_value() == 1) {
            if (order) *order = 1;
            return true;
        }
        if (a.rational_value() == -1) {
            if (order) *order = 2;
            return true;
        }
        return false;
    }
    // cheap screens: a torsion element is an algebraic integer of norm +-1
    mpq_class n = an_norm(a);
    if (n != 1 && n != -1) return false;
    IntPolynomial m = an_minpoly(a);
    if (!m.is_monic()) return false;
    unsigned long d = static_cast<unsigned long>(m.degree());
    // phi(k) = d forces k <= 2 d^2 + 2
    for (unsigned long k = 3; k <= 2 * d * d + 2; ++k) {
        if (euler_phi(k) != d) continue;
        if (cyclotomic_poly(k) == m) {
            if (order) *order = k;
            return true;
        }
    }
    return false;
}

unsigned long torsion_index(const AlgebraicNumber& a, unsigned long q) {
    // a = zeta_q^j: isolate j by the ball among the q-th roots of unity
    if (q == 1) return 0;
    long e = -64;
    while (true) {
        ComplexBall ab = a.ball(e);
        long hit = -1;
        int hits = 0;
        for (unsigned long j = 0; j < q; ++j) {
            ComplexBall r = cb_unit_root(mpq_class(static_cast<long>(j), static_cast<long>(q)),
                                         std::max<long>(64, -e + 16));
            if (r.overlaps(ab)) {
                ++hits;
                hit = static_cast<long>(j);
            }
        }
        if (hits == 1) return static_cast<unsigned long>(hit);
        if (hits == 0) throw Error("torsion_index: element is not a q-th root of unity");
        e -= 64;
        if (-e > 2 * config().max_prec) throw PrecisionExhausted(config().max_prec);
    }
}

} // namespace pexp
