#ifndef PEXP_FIELD_FACTOR_HPP
#define PEXP_FIELD_FACTOR_HPP

#include <vector>

#include "pexp/numberfield.hpp"

namespace pexp {

/* Factor a polynomial with coefficients in F into monic irreducibles over F
 * (norm/resultant reduction to factorization over Q). Returns (factor,
 * multiplicity) pairs; the product of lc * factor^mult equals the input. */
std::vector<std::pair<FPoly, int>> field_factor(const FPoly& f, const FieldPtr& F);

/* monic gcd over F[Y] re-exported for convenience */
FPoly field_gcd(const FPoly& a, const FPoly& b);

/* the roots inside F of a nonzero integer polynomial */
std::vector<AlgebraicNumber> field_poly_roots(const IntPolynomial& p, const FieldPtr& F);

/* lift an integer polynomial into F[Y] */
FPoly fpoly_from_int(const IntPolynomial& p, const FieldPtr& F);

} // namespace pexp

#endif
