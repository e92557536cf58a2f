#ifndef PEXP_FACTOR_Z_HPP
#define PEXP_FACTOR_Z_HPP

#include <vector>

#include "pexp/intpoly.hpp"

namespace pexp {

/* Complete factorization over Q of a nonzero integer polynomial:
 * list of (irreducible primitive factor with positive leading coefficient,
 * multiplicity); the product of factor^mult equals the input up to a
 * rational unit. Squarefree decomposition + factorization mod a good
 * prime + Hensel lifting + subset recombination, with Eisenstein and
 * modular-certificate fast paths. */
std::vector<std::pair<IntPolynomial, int>> poly_factor(const IntPolynomial& p);

bool poly_is_irreducible(const IntPolynomial& p);

/* cheap screen used by mass enumeration: degree <= 3 is decided exactly;
 * otherwise tries Eisenstein and modular degree-pattern certificates and
 * falls back to the full factorization */
bool irreducible_with_fast_paths(const IntPolynomial& p);

} // namespace pexp

#endif
