#include "pexp/intfactor.hpp"
#include "pexp/config.hpp"
#include "pexp/error.hpp"

#include <algorithm>
#include <map>

namespace pexp {

Config& config() {
    static Config cfg;
    return cfg;
}

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        const unsigned long N = 100000;
        std::vector<bool> sieve(N, true);
        std::vector<unsigned long> ps;
        for (unsigned long i = 2; i < N; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (unsigned long j = i * i; j < N; j += i) sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

bool is_prime(const mpz_class& n) {
    // GMP's Baillie-PSW + Miller-Rabin; 50 reps is far past certainty at desk scale
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

static mpz_class pollard_brent(const mpz_class& n) {
    // deterministic parameter sweep; n odd composite, not a prime power of 2
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        mpz_class saved_x;
        unsigned long power = 1, lam = 0;
        auto f = [&](const mpz_class& v) { return (v * v + c) % n; };
        x = 2;
        y = f(x);
        while (true) {
            if (x == y) break;  // cycle without factor; next c
            mpz_class diff = x - y;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (d != 1 && d != n) return d;
            if (d == n) break;
            if (power == ++lam) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = f(y);
        }
        (void)saved_x;
    }
    throw FactorizationOverflow(n.get_str());
}

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n_in) {
    if (n_in == 0) throw Error("factor_integer: zero input");
    mpz_class n = abs(n_in);
    if (n > config().factor_bound) throw FactorizationOverflow(n.get_str());
    std::map<mpz_class, int> fac;
    for (unsigned long p : small_primes()) {
        if (n == 1) break;
        if (mpz_class(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++fac[mpz_class(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    // remaining cofactor: prime, or split with rho
    std::vector<mpz_class> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            ++fac[m];
            continue;
        }
        // perfect power?
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            for (unsigned long e = 2; e <= mpz_sizeinbase(m.get_mpz_t(), 2); ++e) {
                mpz_class r;
                if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), e) != 0) {
                    for (unsigned long i = 0; i < e; ++i) stack.push_back(r);
                    m = 1;
                    break;
                }
            }
            if (m == 1) continue;
        }
        mpz_class d = pollard_brent(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::vector<std::pair<mpz_class, int>> out(fac.begin(), fac.end());
    return out;
}

std::vector<std::pair<mpz_class, int>> factor_rational(const mpq_class& q) {
    if (q == 0) throw Error("factor_rational: zero input");
    std::map<mpz_class, int> fac;
    for (auto& [p, e] : factor_integer(q.get_num())) fac[p] += e;
    for (auto& [p, e] : factor_integer(q.get_den())) fac[p] -= e;
    std::vector<std::pair<mpz_class, int>> out;
    for (auto& [p, e] : fac)
        if (e != 0) out.emplace_back(p, e);
    return out;
}

} // namespace pexp
