#ifndef PEXP_MODP_HPP
#define PEXP_MODP_HPP

#include <cstdint>
#include <vector>

#include "pexp/intpoly.hpp"

namespace pexp {
namespace modp {

/* Dense polynomial over F_p, constant term first, no trailing zeros. */
using PolyP = std::vector<uint64_t>;

uint64_t add(uint64_t a, uint64_t b, uint64_t p);
uint64_t sub(uint64_t a, uint64_t b, uint64_t p);
uint64_t mul(uint64_t a, uint64_t b, uint64_t p);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p);
uint64_t inv(uint64_t a, uint64_t p);

void normalize(PolyP& f);
inline int degree(const PolyP& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_zero(const PolyP& f) { return f.empty(); }

PolyP reduce(const IntPolynomial& f, uint64_t p);
/* lift to integer coefficients in the symmetric range (-p/2, p/2] */
IntPolynomial lift_symmetric(const PolyP& f, uint64_t p);

PolyP pmul(const PolyP& a, const PolyP& b, uint64_t p);
void pdivmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r, uint64_t p);
PolyP pmod(const PolyP& a, const PolyP& b, uint64_t p);
PolyP pgcd(PolyP a, PolyP b, uint64_t p);  // monic
PolyP pmonic(const PolyP& f, uint64_t p);
PolyP pderiv(const PolyP& f, uint64_t p);
PolyP ppow_mod(const PolyP& base, const mpz_class& e, const PolyP& mod, uint64_t p);

bool is_squarefree(const PolyP& f, uint64_t p);

/* full factorization into monic irreducibles with multiplicities;
 * deterministic (fixed-seed splitting) */
std::vector<std::pair<PolyP, int>> factor(const PolyP& f, uint64_t p);

bool is_irreducible(const PolyP& f, uint64_t p);

} // namespace modp
} // namespace pexp

#endif
