#ifndef PEXP_NUMBERFIELD_HPP
#define PEXP_NUMBERFIELD_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pexp/ball.hpp"
#include "pexp/intpoly.hpp"
#include "pexp/roots.hpp"

namespace pexp {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/* Number field Q(theta) presented by a monic irreducible integer minimal
 * polynomial together with a certified ball isolating the embedded root
 * theta among its conjugates. theta is always an algebraic integer.
 * Immutable; internal ball refinement is monotone and mutex-guarded. */
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr rationals();
    /* minpoly must be monic irreducible; `isolating` must isolate one root */
    static FieldPtr create(const IntPolynomial& minpoly, const ComplexBall& isolating);

    const IntPolynomial& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    bool is_rational_field() const { return degree() == 1; }

    /* embedding ball, refined until radius <= 2^rad_exp2 */
    ComplexBall theta_ball(long rad_exp2) const;
    /* all conjugates (canonical order), each refined to radius <= 2^rad_exp2 */
    std::vector<RootBall> conjugates(long rad_exp2) const;
    int theta_index() const;
    bool theta_real() const;

    /* same mathematical field with the same embedding */
    bool compatible(const NumberField& o) const;

private:
    NumberField(IntPolynomial mp, ComplexBall emb)
        : minpoly_(std::move(mp)), theta_(std::move(emb)) {}
    void ensure_conjugates() const;

    IntPolynomial minpoly_;
    mutable std::mutex mu_;
    mutable ComplexBall theta_;
    mutable std::vector<RootBall> conj_;
    mutable int theta_idx_ = -1;
};

/* Element of Q-bar: coordinates in the power basis of its field's theta.
 * Immutable value type; all operations are pure. */
class AlgebraicNumber {
public:
    AlgebraicNumber();  // rational zero
    static AlgebraicNumber from_rational(const mpq_class& q);
    static AlgebraicNumber from_int(long v);
    static AlgebraicNumber generator(const FieldPtr& f);
    static AlgebraicNumber from_coords(const FieldPtr& f, std::vector<mpq_class> coords);
    /* element with the given (irreducible, content-1) minimal polynomial,
     * picked out by an isolating ball; its field gets an integral generator */
    static AlgebraicNumber from_minpoly_root(const IntPolynomial& irreducible,
                                             const ComplexBall& isolating);
    /* pick the root nearest to a decimal approximation; the approximation
     * must single it out (nearest-by-a-factor-of-two margin), else
     * CertificationError */
    static AlgebraicNumber from_minpoly_approx(const IntPolynomial& irreducible,
                                               const mpq_class& approx_re,
                                               const mpq_class& approx_im);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    mpq_class rational_value() const;  // pre: is_rational()

    AlgebraicNumber operator-() const;
    AlgebraicNumber inverse() const;  // throws DivisionByZero

    /* certified ball, refined until radius <= 2^rad_exp2 */
    ComplexBall ball(long rad_exp2) const;
    /* balls of all embeddings sigma_i (field conjugate order) */
    std::vector<ComplexBall> conjugate_balls(long rad_exp2) const;
    bool is_real() const;  // certified
    int sign_real() const; // pre: is_real(); exact (0 only for the zero element)

    std::string str() const;  // debug rendering

private:
    FieldPtr field_;
    std::vector<mpq_class> coords_;
};

/* arithmetic; operands in different fields are moved into a composite first */
AlgebraicNumber operator+(const AlgebraicNumber&, const AlgebraicNumber&);
AlgebraicNumber operator-(const AlgebraicNumber&, const AlgebraicNumber&);
AlgebraicNumber operator*(const AlgebraicNumber&, const AlgebraicNumber&);
AlgebraicNumber operator/(const AlgebraicNumber&, const AlgebraicNumber&);
AlgebraicNumber operator*(const AlgebraicNumber&, long);
bool an_equal(const AlgebraicNumber&, const AlgebraicNumber&);
AlgebraicNumber an_pow(const AlgebraicNumber& a, const mpz_class& e);

/* minimal polynomial over Q of the element itself (content 1, positive lc) */
IntPolynomial an_minpoly(const AlgebraicNumber& a);

mpq_class an_norm(const AlgebraicNumber& a);   // field norm N_{F/Q}
mpq_class an_trace(const AlgebraicNumber& a);

struct Composite {
    FieldPtr field;
    AlgebraicNumber a, b;
};
/* smallest-effort common field containing both, with consistent embeddings */
Composite field_compose(const AlgebraicNumber& a, const AlgebraicNumber& b);

/* fold compose over a list; returns the common field and all the images */
std::pair<FieldPtr, std::vector<AlgebraicNumber>>
to_common_field(const std::vector<AlgebraicNumber>& xs);

/* image of an element of F under theta_F -> theta_image (a root of F's
 * minpoly living in another field) */
AlgebraicNumber map_through(const AlgebraicNumber& a, const AlgebraicNumber& theta_image);

/* rebind into a compatible field, or lift a rational; throws otherwise */
AlgebraicNumber lift_into(const AlgebraicNumber& a, const FieldPtr& f);

/* try to express a inside F (exact); nullopt when a is not in F */
std::optional<AlgebraicNumber> try_express_in(const AlgebraicNumber& a, const FieldPtr& F);

/* the q-th root of beta on the branch of the certified logarithm lambda:
 * the unique root of X^q = beta whose ball contains exp(lambda/q) */
AlgebraicNumber nth_root(const AlgebraicNumber& beta, unsigned long q,
                         const ComplexBall& lambda);

/* principal-branch certified logarithm ball of a nonzero element */
ComplexBall principal_log(const AlgebraicNumber& a, long prec);

IntPolynomial cyclotomic_poly(unsigned long q);
/* zeta_q = the root of the q-th cyclotomic polynomial at exp(2 pi i / q) */
AlgebraicNumber cyclotomic_root(unsigned long q);

/* torsion test; on success *order (if non-null) receives the exact order */
bool is_root_of_unity(const AlgebraicNumber& a, unsigned long* order = nullptr);
/* for a torsion element of known order q: the j with a = zeta_q^j */
unsigned long torsion_index(const AlgebraicNumber& a, unsigned long q);

/* hooks for the generic Poly<K> template */
inline bool k_is_zero(const AlgebraicNumber& x) { return x.is_zero(); }
inline AlgebraicNumber k_zero_like(const AlgebraicNumber&) { return AlgebraicNumber(); }
inline AlgebraicNumber k_inv(const AlgebraicNumber& x) { return x.inverse(); }

using FPoly = Poly<AlgebraicNumber>;

} // namespace pexp

#endif
