#include "diffiety/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace diffiety {

/* ---------- Monomial ---------- */

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.factors.reserve(factors.size() + o.factors.size());
    std::size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size()) {
            r.factors.push_back(factors[i++]);
        } else if (i == factors.size()) {
            r.factors.push_back(o.factors[j++]);
        } else {
            int c = JetCoord::cmp(factors[i].first, o.factors[j].first);
            if (c < 0)
                r.factors.push_back(factors[i++]);
            else if (c > 0)
                r.factors.push_back(o.factors[j++]);
            else {
                r.factors.push_back({factors[i].first, factors[i].second + o.factors[j].second});
                ++i, ++j;
            }
        }
    }
    return r;
}

std::optional<Monomial> Monomial::div(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0;
    for (auto& f : o.factors) {
        while (i < factors.size() && factors[i].first < f.first) r.factors.push_back(factors[i++]);
        if (i == factors.size() || !(factors[i].first == f.first) || factors[i].second < f.second)
            return std::nullopt;
        if (factors[i].second > f.second) r.factors.push_back({f.first, factors[i].second - f.second});
        ++i;
    }
    while (i < factors.size()) r.factors.push_back(factors[i++]);
    return r;
}

Monomial Monomial::pow(std::uint32_t e) const {
    Monomial r;
    if (e == 0) return r;
    r.factors = factors;
    for (auto& f : r.factors) f.second *= e;
    return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    auto i = a.factors.rbegin();
    auto j = b.factors.rbegin();
    while (i != a.factors.rend() && j != b.factors.rend()) {
        int c = JetCoord::cmp(i->first, j->first);
        if (c != 0) return c; /* more of a larger coordinate wins */
        if (i->second != j->second) return i->second < j->second ? -1 : 1;
        ++i, ++j;
    }
    return 0; /* equal degree and equal suffix forces equality */
}

/* ---------- Poly ---------- */

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (c != 0) p.t_[Monomial::one()] = c;
    return p;
}

Poly Poly::coordinate(const JetCoord& c) {
    Poly p;
    p.t_[Monomial::coordinate(c)] = 1;
    return p;
}

int Poly::degree() const { return t_.empty() ? 0 : t_.begin()->first.degree(); }

int Poly::jet_degree() const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, t.first.jet_degree());
    return d;
}

int Poly::base_degree() const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, t.first.base_degree());
    return d;
}

int Poly::max_jet_order() const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, t.first.max_jet_order());
    return d;
}

int Poly::degree_in(const JetCoord& c) const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, static_cast<int>(t.first.exponent(c)));
    return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (auto& t : o.t_) r.add_term(t.first, t.second);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (auto& t : o.t_) r.add_term(t.first, -t.second);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (auto& a : t_)
        for (auto& b : o.t_) r.add_term(a.first.times(b.first), a.second * b.second);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.second *= c;
    return r;
}

Poly Poly::pow(std::uint32_t e) const {
    Poly r = Poly::constant(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

int Poly::cmp(const Poly& a, const Poly& b) {
    auto i = a.t_.begin();
    auto j = b.t_.begin();
    while (i != a.t_.end() && j != b.t_.end()) {
        int c = Monomial::cmp(i->first, j->first);
        if (c != 0) return c;
        if (i->second != j->second) return i->second < j->second ? -1 : 1;
        ++i, ++j;
    }
    if (i != a.t_.end()) return 1;
    if (j != b.t_.end()) return -1;
    return 0;
}

std::set<JetCoord> Poly::coords() const {
    std::set<JetCoord> s;
    for (auto& t : t_)
        for (auto& f : t.first.factors) s.insert(f.first);
    return s;
}

bool Poly::depends_on(const JetCoord& c) const {
    for (auto& t : t_)
        if (t.first.exponent(c) > 0) return true;
    return false;
}

Poly Poly::partial(const JetCoord& c) const {
    Poly r;
    for (auto& t : t_) {
        std::uint32_t e = t.first.exponent(c);
        if (e == 0) continue;
        Monomial m = *t.first.div(Monomial::coordinate(c));
        r.add_term(m, t.second * e);
    }
    return r;
}

Rational Poly::eval(const std::map<JetCoord, Rational>& point) const {
    Rational v = 0;
    for (auto& t : t_) {
        Rational term = t.second;
        for (auto& f : t.first.factors) {
            auto it = point.find(f.first);
            if (it == point.end()) throw error("evaluation point does not cover all coordinates");
            Rational p = 1;
            for (std::uint32_t e = 0; e < f.second; ++e) p *= it->second;
            term *= p;
        }
        v += term;
    }
    return v;
}

std::optional<Poly> Poly::div_exact(const Poly& o) const {
    if (o.is_zero()) return std::nullopt;
    Poly r = *this, q;
    while (!r.is_zero()) {
        auto m = r.leading_monomial().div(o.leading_monomial());
        if (!m) return std::nullopt;
        Rational c = r.leading_coeff() / o.leading_coeff();
        Poly piece;
        piece.t_[*m] = c;
        q = q + piece;
        r = r - o * piece;
    }
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading_coeff());
}

/* ---------- gcd ----------
 *
 * Primitive pseudo-remainder sequences with an exact specialization fast
 * path: evaluating all variables but one at a point where the leading
 * coefficient survives bounds the gcd's degree in that variable, so a
 * coprime univariate image proves the gcd is free of it.  That turns the
 * common coprime case (fraction reduction) into cheap univariate work.
 */

namespace {

int deg_in(const Poly& p, const JetCoord& x) { return p.degree_in(x); }

/* Coefficient of x^d when p is read as a univariate polynomial in x. */
Poly coeff_in(const Poly& p, const JetCoord& x, int d) {
    Poly r;
    Monomial xd = Monomial::coordinate(x, static_cast<std::uint32_t>(d));
    for (auto& t : p.terms()) {
        if (static_cast<int>(t.first.exponent(x)) != d) continue;
        r.add_term(*t.first.div(xd), t.second);
    }
    return r;
}

Poly xpow(const JetCoord& x, int e) {
    Poly p;
    p.add_term(Monomial::coordinate(x, static_cast<std::uint32_t>(e)), 1);
    return p;
}

/* Pseudo-remainder of a by b with respect to x (b nonzero in x). */
Poly prem(Poly a, const Poly& b, const JetCoord& x) {
    int db = deg_in(b, x);
    Poly lb = coeff_in(b, x, db);
    while (!a.is_zero() && deg_in(a, x) >= db) {
        int da = deg_in(a, x);
        Poly la = coeff_in(a, x, da);
        a = a * lb - b * la * xpow(x, da - db);
    }
    return a;
}

Poly content_in(const Poly& p, const JetCoord& x) {
    Poly g;
    for (int d = 0; d <= deg_in(p, x); ++d) {
        Poly c = coeff_in(p, x, d);
        if (c.is_zero()) continue;
        g = Poly::gcd(g, c);
        if (g.is_constant()) return Poly::constant(1);
    }
    return g;
}

Poly primitive_part(const Poly& p, const JetCoord& x) {
    if (p.is_zero()) return p;
    Poly c = content_in(p, x);
    if (c.is_constant()) return p;
    return *p.div_exact(c);
}

/* Componentwise-min power product dividing every term. */
Monomial monomial_content(const Poly& p) {
    Monomial g = p.leading_monomial();
    for (auto& t : p.terms()) {
        Monomial next;
        for (auto& f : g.factors) {
            std::uint32_t e = std::min(f.second, t.first.exponent(f.first));
            if (e > 0) next.factors.push_back({f.first, e});
        }
        g = next;
        if (g.is_one()) break;
    }
    return g;
}

/* Univariate image in x at a point over the remaining variables, as dense
 * coefficients; index = degree in x. */
std::vector<Rational> specialize(const Poly& p, const JetCoord& x,
                                 const std::map<JetCoord, Rational>& point) {
    std::vector<Rational> c(static_cast<std::size_t>(deg_in(p, x)) + 1, Rational(0));
    for (auto& t : p.terms()) {
        Rational v = t.second;
        std::size_t dx = 0;
        for (auto& f : t.first.factors) {
            if (f.first == x) {
                dx = f.second;
                continue;
            }
            Rational base = point.at(f.first), pw = 1;
            for (std::uint32_t e = 0; e < f.second; ++e) pw *= base;
            v *= pw;
        }
        c[dx] += v;
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return c;
}

int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
    auto deg = [](const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; };
    auto is_zero = [](const std::vector<Rational>& p) { return p.size() == 1 && p[0] == 0; };
    auto normalize = [](std::vector<Rational>& p) {
        while (p.size() > 1 && p.back() == 0) p.pop_back();
        if (p.empty()) p.push_back(Rational(0));
        /* keep coefficient growth in check: make monic */
        if (!(p.size() == 1 && p[0] == 0)) {
            Rational lc = p.back();
            for (auto& c : p) c /= lc;
        }
    };
    normalize(a);
    normalize(b);
    if (deg(a) < deg(b)) std::swap(a, b);
    while (!is_zero(b)) {
        /* remainder of a by b */
        while (deg(a) >= deg(b) && !is_zero(a)) {
            Rational q = a.back() / b.back();
            int shift = deg(a) - deg(b);
            for (std::size_t i = 0; i < b.size(); ++i)
                a[static_cast<std::size_t>(shift) + i] -= q * b[i];
            a.pop_back();
            normalize(a);
        }
        std::swap(a, b);
    }
    return deg(a);
}

/* Main-variable choice: smallest min-degree among variables common to both
 * operands, ties broken by coordinate order. */
std::optional<JetCoord> pick_main_var(const Poly& a, const Poly& b) {
    std::optional<JetCoord> best;
    int best_deg = 0;
    for (auto& c : a.coords()) {
        int db = deg_in(b, c);
        if (db == 0) continue;
        int d = std::min(deg_in(a, c), db);
        if (!best || d < best_deg) {
            best = c;
            best_deg = d;
        }
    }
    return best;
}

const int kEvalPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

Poly Poly::gcd(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();

    /* shared power product, then work with content-free parts */
    Monomial ma = monomial_content(a0), mb = monomial_content(b0);
    Monomial mg;
    for (auto& f : ma.factors) {
        std::uint32_t e = std::min(f.second, mb.exponent(f.first));
        if (e > 0) mg.factors.push_back({f.first, e});
    }
    Poly mono;
    mono.add_term(mg, 1);
    Poly am, bm;
    am.add_term(ma, 1);
    bm.add_term(mb, 1);
    Poly a = *a0.div_exact(am);
    Poly b = *b0.div_exact(bm);

    if (a.is_constant() || b.is_constant()) return mono.monic();
    if (a.monic() == b.monic()) return (mono * a).monic();
    if (a.degree() >= b.degree() && a.div_exact(b)) return (mono * b).monic();
    if (b.degree() > a.degree() && b.div_exact(a)) return (mono * a).monic();

    auto xopt = pick_main_var(a, b);
    if (!xopt) return mono.monic(); /* no common variable */
    JetCoord x = *xopt;

    /* specialization fast path */
    {
        std::set<JetCoord> others;
        for (auto& c : a.coords())
            if (!(c == x)) others.insert(c);
        for (auto& c : b.coords())
            if (!(c == x)) others.insert(c);
        Poly la = coeff_in(a, x, deg_in(a, x));
        Poly lb = coeff_in(b, x, deg_in(b, x));
        for (int attempt = 0; attempt < 4; ++attempt) {
            std::map<JetCoord, Rational> point;
            int i = 0;
            for (auto& c : others)
                point[c] = kEvalPrimes[(i++ + 3 * attempt) % 12] + (attempt > 1 ? attempt : 0);
            bool ok_a = la.eval(point) != 0, ok_b = lb.eval(point) != 0;
            if (!ok_a && !ok_b) continue;
            int d = univariate_gcd_degree(specialize(a, x, point), specialize(b, x, point));
            if (d == 0) {
                /* gcd is free of x, hence divides both contents */
                Poly g = Poly::gcd(content_in(a, x), content_in(b, x));
                return (mono * g).monic();
            }
            break; /* a nontrivial image: fall through to the PRS */
        }
    }

    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly c = Poly::gcd(ca, cb);
    Poly p = ca.is_constant() ? a : *a.div_exact(ca);
    Poly q = cb.is_constant() ? b : *b.div_exact(cb);
    if (deg_in(p, x) < deg_in(q, x)) std::swap(p, q);

    while (true) {
        Poly r = prem(p, q, x);
        if (r.is_zero()) break;
        if (deg_in(r, x) == 0) {
            q = Poly::constant(1);
            break;
        }
        p = q;
        q = primitive_part(r, x);
    }
    return (c * mono * primitive_part(q, x)).monic();
}

/* ---------- printing ---------- */

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string term_to_string(const Rational& coeff, const std::string& body, bool leading) {
    Rational a = coeff < 0 ? Rational(-coeff) : coeff;
    std::string sign = coeff < 0 ? "-" : "";
    if (!leading) sign = coeff < 0 ? " - " : " + ";
    if (body.empty()) return sign + rational_to_string(a);
    if (a == 1) return sign + body;
    return sign + rational_to_string(a) + "*" + body;
}

std::string Poly::to_string(const JetSpace& space) const {
    if (t_.empty()) return "0";
    std::string out;
    bool leading = true;
    for (auto& t : t_) {
        std::string body;
        for (auto& f : t.first.factors) {
            if (!body.empty()) body += "*";
            body += space.coord_name(f.first);
            if (f.second > 1) body += "^" + std::to_string(f.second);
        }
        out += term_to_string(t.second, body, leading);
        leading = false;
    }
    return out;
}

}  // namespace diffiety
