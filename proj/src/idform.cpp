#include "diffiety/idform.hpp"

#include <algorithm>
#include <functional>

#include "diffiety/parser.hpp"

namespace diffiety {

std::string slots_to_string(SlotSet k) {
    std::string out;
    for (int i = 1; i <= 32; ++i)
        if (slot_in(k, i)) {
            if (!out.empty()) out += ",";
            out += std::to_string(i);
        }
    return out;
}

int IDMonomial::cmp(const IDMonomial& a, const IDMonomial& b) {
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.gens.size(); ++i) {
        int c = IDGen::cmp(a.gens[i], b.gens[i]);
        if (c != 0) return c;
    }
    return 0;
}

IDForm IDForm::from_expr(const Expr& e, int slots) {
    IDForm w(slots);
    if (!e.is_zero()) w.terms_[IDMonomial{}] = e;
    return w;
}

IDForm IDForm::generator(const IDGen& g, int slots) {
    IDForm w(slots);
    w.terms_[IDMonomial{{g}}] = Expr(1);
    return w;
}

IDForm IDForm::term(int slots, std::vector<IDGen> gens, const Expr& coeff) {
    IDForm w(slots);
    if (coeff.is_zero()) return w;
    /* insertion sort, tracking the Koszul sign of each adjacent swap */
    int sign = 1;
    for (std::size_t i = 1; i < gens.size(); ++i) {
        IDGen g = gens[i];
        std::size_t j = i;
        while (j > 0 && g < gens[j - 1]) {
            if (IDGen::pairing(g, gens[j - 1]) % 2 != 0) sign = -sign;
            gens[j] = gens[j - 1];
            --j;
        }
        gens[j] = g;
    }
    for (std::size_t i = 1; i < gens.size(); ++i)
        if (gens[i] == gens[i - 1] && slot_count(gens[i].K) % 2 != 0) return w; /* odd g*g = 0 */
    w.terms_[IDMonomial{std::move(gens)}] = sign < 0 ? -coeff : coeff;
    return w;
}

bool IDForm::is_scalar() const {
    for (const auto& t : terms_)
        if (!t.first.is_scalar()) return false;
    return true;
}

Expr IDForm::scalar_part() const {
    auto it = terms_.find(IDMonomial{});
    return it == terms_.end() ? Expr(0) : it->second;
}

void IDForm::add_term(const IDMonomial& m, const Expr& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

IDForm IDForm::operator-() const {
    IDForm w = *this;
    for (auto& t : w.terms_) t.second = -t.second;
    return w;
}

IDForm IDForm::operator+(const IDForm& o) const {
    if (slots_ != o.slots_) throw shape_error("cannot add forms with different slot counts");
    IDForm w = *this;
    for (const auto& t : o.terms_) w.add_term(t.first, t.second);
    return w;
}

IDForm IDForm::operator-(const IDForm& o) const { return *this + (-o); }

IDForm IDForm::operator*(const IDForm& o) const {
    if (slots_ != o.slots_) throw shape_error("cannot multiply forms with different slot counts");
    IDForm w(slots_);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            std::vector<IDGen> gens = a.first.gens;
            gens.insert(gens.end(), b.first.gens.begin(), b.first.gens.end());
            IDForm piece = term(slots_, std::move(gens), a.second * b.second);
            w += piece;
        }
    return w;
}

IDForm IDForm::scaled(const Expr& c) const {
    IDForm w(slots_);
    if (c.is_zero()) return w;
    for (const auto& t : terms_) w.add_term(t.first, t.second * c);
    return w;
}

IDForm IDForm::reslotted(int slots) const {
    for (const auto& t : terms_)
        for (const auto& g : t.first.gens)
            if (g.K >= (1u << slots))
                throw shape_error("form does not fit in " + std::to_string(slots) + " slots");
    IDForm w = *this;
    w.slots_ = slots;
    return w;
}

int IDForm::max_total_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
}

int IDForm::max_jet_order() const {
    int d = 0;
    for (const auto& t : terms_) {
        d = std::max(d, t.second.max_jet_order());
        for (const auto& g : t.first.gens) d = std::max(d, g.coord.jet_order());
    }
    return d;
}

/* ---------- derivations ---------- */

namespace detail {

IDForm apply_derivation(const IDForm& w, SlotSet delta,
                        const std::function<IDForm(const Expr&)>& derive_coeff,
                        const std::function<IDForm(const IDGen&)>& derive_gen) {
    IDForm out(w.slots());
    for (const auto& t : w.terms()) {
        const auto& gens = t.first.gens;
        IDForm rest = IDForm::term(w.slots(), gens, Expr(1));
        out += derive_coeff(t.second) * rest;
        int sign = 1;
        for (std::size_t s = 0; s < gens.size(); ++s) {
            IDForm dg = derive_gen(gens[s]);
            if (!dg.is_zero()) {
                std::vector<IDGen> prefix(gens.begin(), gens.begin() + static_cast<long>(s));
                std::vector<IDGen> suffix(gens.begin() + static_cast<long>(s) + 1, gens.end());
                Expr c = sign < 0 ? -t.second : t.second;
                out += IDForm::term(w.slots(), prefix, c) * dg *
                       IDForm::term(w.slots(), suffix, Expr(1));
            }
            if (slot_count(delta & gens[s].K) % 2 != 0) sign = -sign;
        }
    }
    return out;
}

}  // namespace detail

IDForm d_vertical(const IDForm& w, int i) {
    if (i < 1 || i > w.slots()) throw shape_error("slot index out of range");
    SlotSet bit = slot_bit(i);
    auto derive_coeff = [&](const Expr& c) {
        IDForm out(w.slots());
        for (const auto& coord : c.coords()) {
            if (coord.is_independent()) continue;
            Expr dc = c.partial(coord);
            if (dc.is_zero()) continue;
            out += IDForm::generator(IDGen{bit, coord}, w.slots()).scaled(dc);
        }
        return out;
    };
    auto derive_gen = [&](const IDGen& g) {
        if (g.K & bit) return IDForm(w.slots());
        return IDForm::generator(IDGen{g.K | bit, g.coord}, w.slots());
    };
    return detail::apply_derivation(w, bit, derive_coeff, derive_gen);
}

namespace {

IDForm total_derivative_idf_impl(const IDForm& w, std::size_t mu, const EquationSystem* eq,
                                 const JetSpace& space) {
    int leading = eq ? eq->leading() : -1;
    auto derive_coeff = [&](const Expr& c) {
        Expr dc = eq ? eq->total_derivative_internal(c, mu) : total_derivative(c, mu, space);
        return IDForm::from_expr(dc, w.slots());
    };
    auto derive_gen = [&](const IDGen& g) {
        if (!g.vertical()) return IDForm(w.slots());
        if (eq && static_cast<int>(mu) == leading) {
            /* dv[K]u_{sigma+t} restricts to dv[K] of the internal value */
            Expr inner = eq->expanded_rhs(g.coord.dep, g.coord.sigma);
            return d_K_vertical(IDForm::from_expr(inner, w.slots()), g.K);
        }
        if (eq && g.coord.sigma.order() + 1 > eq->order_cap())
            throw prolongation_limit_error("form rewriting exceeds the jet order cap " +
                                           std::to_string(eq->order_cap()));
        return IDForm::generator(IDGen{g.K, JetCoord::jet(g.coord.dep, g.coord.sigma.plus(mu))},
                                 w.slots());
    };
    return detail::apply_derivation(w, 0, derive_coeff, derive_gen);
}

}  // namespace

IDForm total_derivative_idf(const IDForm& w, std::size_t mu, const JetSpace& space) {
    return total_derivative_idf_impl(w, mu, nullptr, space);
}

IDForm total_derivative_idf(const IDForm& w, const MultiIndex& sigma, const JetSpace& space) {
    IDForm out = w;
    for (std::size_t mu = 0; mu < sigma.width(); ++mu)
        for (std::uint32_t r = 0; r < sigma.count(mu); ++r)
            out = total_derivative_idf(out, mu, space);
    return out;
}

IDForm total_derivative_idf_internal(const IDForm& w, std::size_t mu, const EquationSystem& eq) {
    return total_derivative_idf_impl(w, mu, &eq, eq.space());
}

IDForm total_derivative_idf_internal(const IDForm& w, const MultiIndex& sigma,
                                     const EquationSystem& eq) {
    IDForm out = w;
    for (std::size_t mu = 0; mu < sigma.width(); ++mu)
        for (std::uint32_t r = 0; r < sigma.count(mu); ++r)
            out = total_derivative_idf_internal(out, mu, eq);
    return out;
}

IDForm d_horizontal(const IDForm& w, int i, const JetSpace& space) {
    if (i < 1 || i > w.slots()) throw shape_error("slot index out of range");
    IDForm out(w.slots());
    for (int mu = 0; mu < space.n(); ++mu) {
        IDGen dx{slot_bit(i), JetCoord::independent(mu)};
        out += IDForm::generator(dx, w.slots()) *
               total_derivative_idf(w, static_cast<std::size_t>(mu), space);
    }
    return out;
}

IDForm d_horizontal_internal(const IDForm& w, int i, const EquationSystem& eq) {
    if (i < 1 || i > w.slots()) throw shape_error("slot index out of range");
    IDForm out(w.slots());
    for (int mu = 0; mu < eq.space().n(); ++mu) {
        IDGen dx{slot_bit(i), JetCoord::independent(mu)};
        out += IDForm::generator(dx, w.slots()) *
               total_derivative_idf_internal(w, static_cast<std::size_t>(mu), eq);
    }
    return out;
}

IDForm d_slot(const IDForm& w, int i, const JetSpace& space) {
    return d_horizontal(w, i, space) + d_vertical(w, i);
}

IDForm d_slot_internal(const IDForm& w, int i, const EquationSystem& eq) {
    return d_horizontal_internal(w, i, eq) + d_vertical(w, i);
}

IDForm d_K_vertical(const IDForm& w, SlotSet K) {
    IDForm out = w;
    for (int i = 1; i <= 32; ++i)
        if (slot_in(K, i)) out = d_vertical(out, i); /* ascending application order */
    return out;
}

bool is_cartan(const IDForm& w) {
    for (const auto& t : w.terms())
        for (const auto& g : t.first.gens)
            if (!g.vertical()) return false;
    return true;
}

IDForm restrict_idform(const IDForm& w, const EquationSystem& eq) {
    IDForm out(w.slots());
    int t_var = eq.leading();
    for (const auto& t : w.terms()) {
        IDForm acc = IDForm::from_expr(eq.restrict(t.second), w.slots());
        for (const auto& g : t.first.gens) {
            if (acc.is_zero()) break;
            if (!g.vertical() ||
                g.coord.sigma.count(static_cast<std::size_t>(t_var)) == 0) {
                acc = acc * IDForm::generator(g, w.slots());
            } else {
                Expr inner =
                    eq.expanded_rhs(g.coord.dep, *g.coord.sigma.minus(static_cast<std::size_t>(t_var)));
                acc = acc * d_K_vertical(IDForm::from_expr(inner, w.slots()), g.K);
            }
        }
        out += acc;
    }
    return out;
}

/* ---------- printing ---------- */

std::string IDForm::to_string(const JetSpace& space) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool leading = true;
    for (const auto& t : terms_) {
        std::string gens;
        for (const auto& g : t.first.gens) {
            if (!gens.empty()) gens += "*";
            gens += g.vertical() ? "dv[" : "d[";
            gens += slots_to_string(g.K) + "]" + space.coord_name(g.coord);
        }
        const Expr& c = t.second;
        if (c.is_polynomial() && c.num().term_count() == 1) {
            const auto& mono = c.num().leading_monomial();
            std::string body;
            for (const auto& f : mono.factors) {
                if (!body.empty()) body += "*";
                body += space.coord_name(f.first);
                if (f.second > 1) body += "^" + std::to_string(f.second);
            }
            if (!gens.empty()) body += (body.empty() ? "" : "*") + gens;
            out += term_to_string(c.num().leading_coeff(), body, leading);
        } else {
            std::string body = "(" + c.to_string(space) + ")";
            if (!gens.empty()) body += "*" + gens;
            out += term_to_string(Rational(1), body, leading);
        }
        leading = false;
    }
    return out;
}

/* ---------- parsing ---------- */

namespace {

class FormParser {
  public:
    FormParser(detail::TokenStream& ts, const JetSpace& space, int slots)
        : ts_(ts), ep_(ts, space), slots_(slots) {}

    IDForm parse_form() {
        IDForm e = parse_term();
        while (ts_.peek().kind == detail::Token::Punct &&
               (ts_.peek().text == "+" || ts_.peek().text == "-")) {
            bool add = ts_.next().text == "+";
            IDForm rhs = parse_term();
            e = add ? e + rhs : e - rhs;
        }
        return e;
    }

  private:
    detail::TokenStream& ts_;
    detail::ExprParser ep_;
    int slots_;

    IDForm parse_term() {
        IDForm e = parse_factor();
        while (ts_.peek().kind == detail::Token::Punct &&
               (ts_.peek().text == "*" || ts_.peek().text == "/")) {
            bool mul = ts_.next().text == "*";
            IDForm rhs = parse_factor();
            if (mul) {
                e = e * rhs;
            } else {
                if (!rhs.is_scalar()) ts_.fail("can only divide by scalar forms");
                Expr d = rhs.scalar_part();
                if (d.is_zero()) ts_.fail("division by zero expression");
                e = e.scaled(Expr(1) / d);
            }
        }
        return e;
    }

    IDForm parse_factor() {
        IDForm e = parse_base();
        if (ts_.peek().kind == detail::Token::Punct && ts_.peek().text == "^") {
            ts_.next();
            int p = ep_.parse_exponent();
            if (e.is_scalar()) return IDForm::from_expr(e.scalar_part().pow(p), slots_);
            if (p < 0) ts_.fail("negative powers need scalar forms");
            IDForm acc = IDForm::from_expr(Expr(1), slots_);
            for (int r = 0; r < p; ++r) acc = acc * e;
            return acc;
        }
        return e;
    }

    IDForm parse_base() {
        const auto& t = ts_.peek();
        if (t.kind == detail::Token::Num)
            return IDForm::from_expr(Expr(Rational(ts_.next().text)), slots_);
        if (t.kind == detail::Token::Punct && t.text == "(") {
            ts_.next();
            IDForm e = parse_form();
            if (!(ts_.peek().kind == detail::Token::Punct && ts_.peek().text == ")"))
                ts_.fail("expected ')'");
            ts_.next();
            return e;
        }
        if (t.kind == detail::Token::Punct && t.text == "-") {
            ts_.next();
            return -parse_factor();
        }
        if (t.kind == detail::Token::Ident) {
            detail::Token id = ts_.next();
            bool is_gen = (id.text == "d" || id.text == "dv") && id.sub.empty() &&
                          ts_.peek().kind == detail::Token::Punct && ts_.peek().text == "[";
            if (!is_gen) return IDForm::from_expr(Expr::coordinate(ep_.resolve(id)), slots_);
            return parse_generator(id.text == "dv");
        }
        ts_.fail("expected a number, coordinate, generator or '('");
    }

    IDForm parse_generator(bool vertical) {
        ts_.next(); /* '[' */
        SlotSet K = 0;
        while (true) {
            if (ts_.peek().kind != detail::Token::Num) ts_.fail("expected slot index");
            detail::Token n = ts_.next();
            int slot = std::stoi(n.text);
            if (slot < 1 || slot > slots_)
                throw parse_error("slot index " + n.text + " out of range 1.." +
                                      std::to_string(slots_),
                                  n.pos);
            K |= slot_bit(slot);
            if (ts_.peek().kind == detail::Token::Punct && ts_.peek().text == ",") {
                ts_.next();
                continue;
            }
            break;
        }
        if (!(ts_.peek().kind == detail::Token::Punct && ts_.peek().text == "]"))
            ts_.fail("expected ']'");
        ts_.next();
        if (ts_.peek().kind != detail::Token::Ident) ts_.fail("expected a coordinate after ']'");
        detail::Token id = ts_.next();
        JetCoord c = ep_.resolve(id);
        if (vertical && c.is_independent())
            throw parse_error("dv[...] applies to jet coordinates", id.pos);
        if (!vertical && !c.is_independent())
            throw parse_error("d[...] applies to base coordinates; use dv[...] for jets", id.pos);
        return IDForm::generator(IDGen{K, c}, slots_);
    }
};

}  // namespace

IDForm parse_idform(const std::string& text, const JetSpace& space, int slots) {
    detail::TokenStream ts(text);
    FormParser p(ts, space, slots);
    IDForm w = p.parse_form();
    if (ts.peek().kind != detail::Token::End) ts.fail("unexpected trailing input");
    return w;
}

}  // namespace diffiety
