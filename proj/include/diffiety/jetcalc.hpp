#pragma once
/* Total derivatives, prolongation and the Euler operator on free jet space. */

#include <vector>

#include "diffiety/expression.hpp"

namespace diffiety {

/* Tuple of expressions, one per dependent variable (or per equation). */
using Section = std::vector<Expr>;

/* D_mu = d/dx^mu + sum_sigma u^j_{sigma+mu} d/du^j_sigma, acting on the
 * coordinates actually present. */
Expr total_derivative(const Expr& e, std::size_t mu, const JetSpace& space);

/* Iterated D_sigma. */
Expr total_derivative(const Expr& e, const MultiIndex& sigma, const JetSpace& space);

/* Componentwise D_sigma. */
Section prolong(const Section& f, const MultiIndex& sigma, const JetSpace& space);

/* Variational derivative of a density: component j is
 * sum_sigma (-1)^|sigma| D_sigma(dL/du^j_sigma). */
Section euler_operator(const Expr& density, const JetSpace& space);

/* Exact within this class of densities: the Euler operator annihilates
 * exactly the total divergences. */
bool is_total_divergence(const Expr& density, const JetSpace& space);

}  // namespace diffiety
