#include "diffiety/expression.hpp"

#include <algorithm>

namespace diffiety {

Expr::Expr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw zero_division_error("division by zero expression");
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!(g == Poly::constant(1))) {
        num_ = *num_.div_exact(g);
        den_ = *den_.div_exact(g);
    }
    Rational lc = den_.leading_coeff();
    if (lc != 1) {
        num_ = num_.scaled(Rational(1) / lc);
        den_ = den_.scaled(Rational(1) / lc);
    }
}

Expr Expr::operator-() const {
    Expr r = *this;
    r.num_ = -r.num_;
    return r;
}

Expr Expr::operator+(const Expr& o) const {
    if (den_ == o.den_) return Expr(num_ + o.num_, den_);
    return Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Expr Expr::operator-(const Expr& o) const {
    if (den_ == o.den_) return Expr(num_ - o.num_, den_);
    return Expr(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Expr Expr::operator*(const Expr& o) const { return Expr(num_ * o.num_, den_ * o.den_); }

Expr Expr::operator/(const Expr& o) const {
    if (o.num_.is_zero()) throw zero_division_error("division by zero expression");
    return Expr(num_ * o.den_, den_ * o.num_);
}

Expr Expr::pow(int e) const {
    if (e < 0) return Expr(1) / pow(-e);
    return Expr(num_.pow(static_cast<std::uint32_t>(e)), den_.pow(static_cast<std::uint32_t>(e)));
}

int Expr::cmp(const Expr& a, const Expr& b) {
    int c = Poly::cmp(a.num_, b.num_);
    if (c != 0) return c;
    return Poly::cmp(a.den_, b.den_);
}

std::set<JetCoord> Expr::coords() const {
    std::set<JetCoord> s = num_.coords();
    for (auto& c : den_.coords()) s.insert(c);
    return s;
}

bool Expr::depends_on(const JetCoord& c) const { return num_.depends_on(c) || den_.depends_on(c); }

int Expr::max_jet_order() const { return std::max(num_.max_jet_order(), den_.max_jet_order()); }

Expr Expr::partial(const JetCoord& c) const {
    /* quotient rule; canonicalization absorbs the common factors */
    return Expr(num_.partial(c) * den_ - num_ * den_.partial(c), den_ * den_);
}

Expr Expr::substitute(const std::map<JetCoord, Expr>& rules) const {
    auto apply = [&rules](const Poly& p) {
        Expr acc(0);
        for (auto& t : p.terms()) {
            Expr term(t.second);
            for (auto& f : t.first.factors) {
                auto it = rules.find(f.first);
                Expr base = it != rules.end() ? it->second : Expr::coordinate(f.first);
                term *= base.pow(static_cast<int>(f.second));
            }
            acc += term;
        }
        return acc;
    };
    Expr n = apply(num_), d = apply(den_);
    if (d.is_zero()) throw zero_division_error("substitution makes a denominator vanish");
    return n / d;
}

Rational Expr::eval(const std::map<JetCoord, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw zero_division_error("denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

std::string Expr::to_string(const JetSpace& space) const {
    if (is_polynomial()) return num_.to_string(space);
    auto wrap = [&space](const Poly& p) {
        std::string s = p.to_string(space);
        bool atom = p.term_count() == 1 && p.leading_coeff() == 1 &&
                    p.leading_monomial().factors.size() == 1;
        return atom ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

}  // namespace diffiety
