#pragma once
/* Canonical rational expressions in jet coordinates: num/den with gcd 1 and
 * monic denominator.  Equal functions have equal representations, so == is
 * semantic equality.
 */

#include <map>
#include <optional>
#include <set>
#include <string>

#include "diffiety/polynomial.hpp"

namespace diffiety {

class Expr {
  public:
    Expr() : num_(), den_(Poly::constant(1)) {}
    Expr(int c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}
    Expr(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}
    explicit Expr(const Poly& p) : num_(p), den_(Poly::constant(1)) {}
    /* Reduces to canonical form; throws zero_division_error if den == 0. */
    Expr(Poly num, Poly den);

    static Expr coordinate(const JetCoord& c) { return Expr(Poly::coordinate(c)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly::constant(1); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const; /* throws zero_division_error */
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr pow(int e) const; /* negative exponents flip the fraction */

    bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }
    static int cmp(const Expr& a, const Expr& b);
    bool operator<(const Expr& o) const { return cmp(*this, o) < 0; }

    std::set<JetCoord> coords() const;
    bool depends_on(const JetCoord& c) const;
    int max_jet_order() const;

    Expr partial(const JetCoord& c) const;
    /* Simultaneous substitution; unlisted coordinates are untouched.  Throws
     * zero_division_error if a denominator vanishes under the rules. */
    Expr substitute(const std::map<JetCoord, Expr>& rules) const;
    Rational eval(const std::map<JetCoord, Rational>& point) const;

    std::string to_string(const JetSpace& space) const;

  private:
    Poly num_, den_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return Expr(c) * e; }

}  // namespace diffiety
