#ifndef PEXP_ROOTS_HPP
#define PEXP_ROOTS_HPP

#include <vector>

#include "pexp/ball.hpp"
#include "pexp/intpoly.hpp"

namespace pexp {

/* One isolated root of a squarefree integer polynomial. */
struct RootBall {
    ComplexBall ball;  // contains exactly one root; pairwise disjoint across the list
    bool real = false; // certified real
    int conj_index = -1;  // index of the complex-conjugate root (self for real roots)
};

/* Isolate all complex roots of a squarefree polynomial, certified
 * (each disk contains exactly one root, disks pairwise disjoint), in
 * canonical order: ascending real part; conjugate pairs tie-broken with
 * negative imaginary part first. */
std::vector<RootBall> isolate_roots(const IntPolynomial& squarefree);

/* Shrink an isolating disk to radius <= 2^rad_exp2 around the same root.
 * The result is contained in the input disk. */
ComplexBall refine_root(const IntPolynomial& poly, const ComplexBall& isolating,
                        long rad_exp2);

/* Certify that `ball` contains exactly one root of `poly` (squarefree). */
bool verify_isolating(const IntPolynomial& poly, const ComplexBall& ball);

} // namespace pexp

#endif
