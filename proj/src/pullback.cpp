#include "diffiety/pullback.hpp"

#include "diffiety/jetcalc.hpp"

namespace diffiety {

BundleMap::BundleMap(JetSpace src, JetSpace tgt, Section f)
    : source(std::move(src)), target(std::move(tgt)), components(std::move(f)) {
    if (target.independents != source.independents)
        throw shape_error("bundle map: source and target must share independent variables");
    if (components.size() != target.dependents.size())
        throw shape_error("bundle map: expected one component per target dependent");
}

Expr pullback_expr(const BundleMap& F, const Expr& target_expr) {
    std::map<JetCoord, Expr> repl;
    for (const JetCoord& c : target_expr.coords()) {
        if (!c.is_independent())
            repl.emplace(c, total_derivative(F.components[(std::size_t)c.dep], c.sigma, F.source));
    }
    return target_expr.substitute(repl);
}

IDForm pullback_form(const BundleMap& F, const IDForm& target_form) {
    IDForm out(target_form.slots());
    for (const auto& [mono, coeff] : target_form.terms()) {
        IDForm image = IDForm::from_expr(pullback_expr(F, coeff), target_form.slots());
        for (const IDGen& g : mono.gens) {
            if (!g.vertical()) {
                image = image * IDForm::generator(g, target_form.slots());
            } else {
                Expr pulled = total_derivative(F.components[(std::size_t)g.coord.dep],
                                               g.coord.sigma, F.source);
                image = image * d_K_vertical(IDForm::from_expr(pulled, target_form.slots()), g.K);
            }
        }
        out = out + image;
    }
    return out;
}

IDForm w_derivation(const IDForm& w, int a, SlotSet K) {
    int slots = w.slots();
    auto on_coeff = [&](const Expr& e) -> IDForm {
        if (K != 0) return IDForm(slots);
        return IDForm::from_expr(e.partial(JetCoord::jet(a, MultiIndex{})), slots);
    };
    auto on_gen = [&](const IDGen& g) -> IDForm {
        if (g.vertical() && g.coord.dep == a && g.coord.sigma.empty() && g.K == K)
            return IDForm::from_expr(Expr(1), slots);
        return IDForm(slots);
    };
    return detail::apply_derivation(w, K, on_coeff, on_gen);
}

std::map<std::pair<int, SlotSet>, IDForm> liouville_lift(const BundleMap& F, int slots) {
    if (slots < 0 || slots > 16) throw shape_error("liouville_lift: slot count out of range");
    std::map<std::pair<int, SlotSet>, IDForm> out;
    SlotSet all = (SlotSet{1} << slots) - 1;
    for (int a = 0; a < (int)F.components.size(); ++a) {
        IDForm base = IDForm::from_expr(F.components[(std::size_t)a], slots);
        for (SlotSet K = 0; K <= all; ++K)
            out.emplace(std::make_pair(a, K), d_K_vertical(base, K));
    }
    return out;
}

}  // namespace diffiety
