#ifndef PEXP_INTFACTOR_HPP
#define PEXP_INTFACTOR_HPP

#include <gmpxx.h>
#include <vector>

namespace pexp {

bool is_prime(const mpz_class& n);

/* prime factorization of |n|, n != 0; ascending primes.
 * Throws FactorizationOverflow when |n| exceeds config().factor_bound. */
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);

/* factorization of a nonzero rational; negative exponents from the denominator */
std::vector<std::pair<mpz_class, int>> factor_rational(const mpq_class& q);

/* the primes below n, ascending */
const std::vector<unsigned long>& small_primes();

} // namespace pexp

#endif
