#include "pexp/field_factor.hpp"
#include "pexp/error.hpp"
#include "pexp/factor_z.hpp"

namespace pexp {

namespace {

AlgebraicNumber f_rat(const mpq_class& q, const FieldPtr& F) {
    std::vector<mpq_class> c(static_cast<size_t>(F->degree()), mpq_class(0));
    c[0] = q;
    return AlgebraicNumber::from_coords(F, std::move(c));
}

FPoly fmonic(const FPoly& f) {
    if (f.is_zero()) return f;
    return scale(f, f.lc().inverse());
}

/* g(Y - s*theta) via Horner composition */
FPoly shift_by_theta(const FPoly& g, long s, const FieldPtr& F) {
    AlgebraicNumber theta = AlgebraicNumber::generator(F);
    FPoly t;
    t.c = {theta * (-s), f_rat(1, F)};
    t.normalize();
    FPoly acc;
    for (int i = g.degree(); i >= 0; --i) {
        acc = acc * t;
        acc = acc + FPoly::constant(g.c[static_cast<size_t>(i)]);
    }
    return acc;
}

/* norm of an F-polynomial: N(Y) = prod_sigma g^sigma(Y), an integer-coefficient
 * polynomial computed by evaluation/interpolation through an_norm */
IntPolynomial fpoly_norm(const FPoly& g, const FieldPtr& F) {
    int D = g.degree() * F->degree();
    std::vector<mpq_class> xs;
    std::vector<mpq_class> ys;
    long v = 0;
    while (static_cast<int>(xs.size()) < D + 1) {
        for (long s : {1L, -1L}) {
            if (v == 0 && s == -1) continue;
            mpq_class x(s * v);
            AlgebraicNumber gv = g.eval(f_rat(x, F));
            xs.push_back(x);
            ys.push_back(an_norm(gv));
            if (static_cast<int>(xs.size()) == D + 1) break;
        }
        ++v;
    }
    // Newton divided differences over Q
    size_t n = xs.size();
    std::vector<mpq_class> dd = ys;
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    }
    QPoly acc, basis = QPoly::constant(mpq_class(1));
    for (size_t i = 0; i < n; ++i) {
        acc = acc + scale(basis, dd[i]);
        QPoly lin;
        lin.c = {-xs[i], mpq_class(1)};
        basis = basis * lin;
    }
    return to_intpoly_primitive(acc);
}

/* squarefree decomposition over F (Yun, characteristic 0) */
std::vector<std::pair<FPoly, int>> field_squarefree(const FPoly& f0) {
    std::vector<std::pair<FPoly, int>> out;
    FPoly f = fmonic(f0);
    if (f.degree() <= 0) return out;
    FPoly fp = f.derivative();
    FPoly a = poly_gcd_field(f, fp);
    FPoly b, c, d;
    {
        FPoly q, r;
        poly_divmod(f, a, q, r);
        b = q;
        poly_divmod(fp, a, q, r);
        c = q;
    }
    d = c - b.derivative();
    int mult = 1;
    while (b.degree() > 0) {
        FPoly g = poly_gcd_field(b, d);
        if (g.degree() > 0) out.emplace_back(g, mult);
        FPoly q, r;
        poly_divmod(b, g, q, r);
        b = q;
        poly_divmod(d, g, q, r);
        c = q;
        d = c - b.derivative();
        ++mult;
    }
    return out;
}

/* Trager: factor a monic squarefree polynomial over F */
std::vector<FPoly> factor_squarefree_field(const FPoly& g, const FieldPtr& F) {
    if (g.degree() == 1) return {g};
    for (long s = 0; s <= 20; ++s) {
        for (long sg : {1L, -1L}) {
            if (s == 0 && sg == -1) continue;
            long sh = sg * s;
            FPoly gs = shift_by_theta(g, sh, F);
            IntPolynomial N = fpoly_norm(gs, F);
            if (N.degree() != g.degree() * F->degree()) continue;
            if (squarefree_part(N).degree() != N.degree()) continue;
            auto nf = poly_factor(N);
            if (nf.size() == 1) return {g};  // norm irreducible => g irreducible
            std::vector<FPoly> out;
            FPoly rem = g;
            for (auto& [Ni, m] : nf) {
                // factor = gcd(g, Ni(Y + s*theta))
                FPoly NiF = fpoly_from_int(Ni, F);
                FPoly NiShift = shift_by_theta(NiF, -sh, F);
                FPoly h = poly_gcd_field(rem, NiShift);
                if (h.degree() > 0) {
                    out.push_back(fmonic(h));
                    FPoly q, r;
                    poly_divmod(rem, h, q, r);
                    rem = q;
                }
            }
            if (rem.degree() != 0)
                throw Error("field_factor: incomplete norm split");
            return out;
        }
    }
    throw Error("field_factor: no squarefree norm shift found");
}

} // namespace

FPoly fpoly_from_int(const IntPolynomial& p, const FieldPtr& F) {
    FPoly f;
    for (const auto& v : p.c) f.c.push_back(f_rat(mpq_class(v), F));
    f.normalize();
    return f;
}

FPoly field_gcd(const FPoly& a, const FPoly& b) { return poly_gcd_field(a, b); }

std::vector<std::pair<FPoly, int>> field_factor(const FPoly& f, const FieldPtr& F) {
    if (f.is_zero()) throw Error("field_factor: zero polynomial");
    std::vector<std::pair<FPoly, int>> out;
    for (auto& [g, m] : field_squarefree(f)) {
        for (auto& irr : factor_squarefree_field(fmonic(g), F)) out.emplace_back(irr, m);
    }
    return out;
}

std::vector<AlgebraicNumber> field_poly_roots(const IntPolynomial& p, const FieldPtr& F) {
    if (p.is_zero()) throw Error("field_poly_roots: zero polynomial");
    if (F->is_rational_field()) {
        std::vector<AlgebraicNumber> out;
        for (auto& [f, m] : poly_factor(p)) {
            if (f.degree() == 1) {
                mpq_class v(-f.coeff(0), f.coeff(1));
                v.canonicalize();
                out.push_back(AlgebraicNumber::from_rational(v));
            }
        }
        return out;
    }
    FPoly fp = fpoly_from_int(p, F);
    std::vector<AlgebraicNumber> out;
    for (auto& [g, m] : field_factor(fp, F)) {
        if (g.degree() == 1) {
            out.push_back(-(g.c[0] / g.c[1]));
        }
    }
    return out;
}

} // namespace pexp
