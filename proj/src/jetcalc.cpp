#include "diffiety/jetcalc.hpp"

namespace diffiety {

Expr total_derivative(const Expr& e, std::size_t mu, const JetSpace& space) {
    (void)space;
    Expr out = e.partial(JetCoord::independent(static_cast<int>(mu)));
    for (const auto& c : e.coords()) {
        if (c.is_independent()) continue;
        Expr de = e.partial(c);
        if (de.is_zero()) continue;
        out += Expr::coordinate(JetCoord::jet(c.dep, c.sigma.plus(mu))) * de;
    }
    return out;
}

Expr total_derivative(const Expr& e, const MultiIndex& sigma, const JetSpace& space) {
    Expr out = e;
    for (std::size_t mu = 0; mu < sigma.width(); ++mu)
        for (std::uint32_t r = 0; r < sigma.count(mu); ++r) out = total_derivative(out, mu, space);
    return out;
}

Section prolong(const Section& f, const MultiIndex& sigma, const JetSpace& space) {
    Section out;
    out.reserve(f.size());
    for (const auto& e : f) out.push_back(total_derivative(e, sigma, space));
    return out;
}

Section euler_operator(const Expr& density, const JetSpace& space) {
    Section out(static_cast<std::size_t>(space.m()), Expr(0));
    for (const auto& c : density.coords()) {
        if (c.is_independent()) continue;
        Expr de = density.partial(c);
        if (de.is_zero()) continue;
        Expr term = total_derivative(de, c.sigma, space);
        if (c.sigma.order() % 2 != 0) term = -term;
        out[static_cast<std::size_t>(c.dep)] += term;
    }
    return out;
}

bool is_total_divergence(const Expr& density, const JetSpace& space) {
    for (const auto& comp : euler_operator(density, space))
        if (!comp.is_zero()) return false;
    return true;
}

}  // namespace diffiety
