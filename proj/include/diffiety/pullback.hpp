#pragma once
/* Maps into another bundle and the induced structures on forms:
 * the pullback homomorphism, the W-derivations dual to order-zero vertical
 * generators, and the lift of a map to iterated forms.
 */

#include "diffiety/idform.hpp"

namespace diffiety {

/* F : source jets -> target bundle, given by one component per target
 * dependent.  Both bundles share the independent variables; target jet
 * coordinates pull back through v^a_sigma |-> D_sigma(F^a). */
struct BundleMap {
    JetSpace source;
    JetSpace target;
    Section components; /* F^a over the source space */

    BundleMap(JetSpace src, JetSpace tgt, Section f);
};

Expr pullback_expr(const BundleMap& F, const Expr& target_expr);

/* Algebra homomorphism commuting with the slot differentials:
 * d[L]x^mu is fixed, dv[K]v^a_sigma |-> dv[K](D_sigma F^a). */
IDForm pullback_form(const BundleMap& F, const IDForm& target_form);

/* W_{a,K}: the graded derivation pairing with order-zero vertical
 * generators, W(dv[L]v^b) = delta_ab delta_KL, zero on every other
 * generator; on coefficients it is d/dv^a for K empty and zero otherwise. */
IDForm w_derivation(const IDForm& w, int a, SlotSet K);

/* Components dv[K](F^a) of the lift of F to iterated forms, K running over
 * all subsets of {1..slots} (K = 0 is F itself). */
std::map<std::pair<int, SlotSet>, IDForm> liouville_lift(const BundleMap& F, int slots);

}  // namespace diffiety
