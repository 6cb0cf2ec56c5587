#pragma once
/* Seeded random generators for property tests and the selftest command.
 * Determinism matters: the same seed must produce the same stream on every
 * platform, so only mt19937_64 draws are used (no distribution objects).
 */

#include <cstdint>
#include <random>

#include "diffiety/expression.hpp"

namespace diffiety {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /* uniform integer in [lo, hi] */
    int range(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(int num, int den) { return range(1, den) <= num; }

    Rational rational(int max_abs = 5, int max_den = 3) {
        int n = range(-max_abs, max_abs);
        int d = range(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(int max_abs = 5, int max_den = 3) {
        Rational r = rational(max_abs, max_den);
        return r == 0 ? Rational(1) : r;
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

inline JetCoord random_jet_coord(Rng& rng, const JetSpace& space, int max_order) {
    int j = rng.range(0, space.m() - 1);
    MultiIndex sigma;
    int ord = rng.range(0, max_order);
    for (int i = 0; i < ord; ++i)
        sigma = sigma.plus(static_cast<std::size_t>(rng.range(0, space.n() - 1)));
    return JetCoord::jet(j, sigma);
}

/* Sparse polynomial: up to max_terms monomials of jet degree <= max_degree in
 * coordinates of order <= max_order, base variables optional. */
inline Expr random_poly_expr(Rng& rng, const JetSpace& space, int max_order, int max_degree,
                             int max_terms, bool with_xt) {
    Poly p;
    int terms = rng.range(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = rng.range(0, max_degree);
        for (int i = 0; i < deg; ++i)
            m = m.times(Monomial::coordinate(random_jet_coord(rng, space, max_order)));
        if (with_xt && rng.chance(1, 3))
            m = m.times(Monomial::coordinate(JetCoord::independent(rng.range(0, space.n() - 1))));
        p.add_term(m, rng.rational());
    }
    return Expr(p);
}

/* Fraction with a denominator kept away from zero by a constant shift. */
inline Expr random_fraction_expr(Rng& rng, const JetSpace& space, int max_order, int max_degree,
                                 int max_terms, bool with_xt) {
    Expr num = random_poly_expr(rng, space, max_order, max_degree, max_terms, with_xt);
    if (!rng.chance(1, 2)) return num;
    Expr den = random_poly_expr(rng, space, max_order, max_degree, 2, with_xt) +
               Expr(rng.nonzero_rational());
    if (den.is_zero()) den = Expr(1);
    return num / den;
}

}  // namespace diffiety
