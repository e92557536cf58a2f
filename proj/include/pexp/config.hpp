#ifndef PEXP_CONFIG_HPP
#define PEXP_CONFIG_HPP

#include <gmpxx.h>

namespace pexp {

/* Engine-wide knobs. All computations are certified: hitting a cap raises
 * an explicit error instead of degrading silently. The CLI populates this
 * from flags and environment (flags win). */
struct Config {
    long start_prec = 64;     // initial ball precision (fractional bits)
    long max_prec = 4096;     // precision-doubling hard cap
    int factor_degree_cap = 32;   // Zassenhaus recombination degree cap
    int max_field_degree = 64;    // cap on composite working-field degree
    mpz_class factor_bound = (mpz_class(1) << 64);  // norm factorization bound
    // LLL Lovasz parameter delta = lll_delta_num / lll_delta_den
    long lll_delta_num = 99;
    long lll_delta_den = 100;
    // witness search defaults (overridable per call via SearchLimits)
    int search_max_degree = 6;
    int search_max_height = 50;
    long search_max_candidates = 200000;
};

Config& config();

} // namespace pexp

#endif
