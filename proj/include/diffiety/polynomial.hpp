#pragma once
/* Multivariate polynomials over Q in jet coordinates.
 *
 * Terms are kept in a map under a graded order so the representation is
 * canonical: equal polynomials are structurally equal.  gcd/exact division
 * support the canonical-fraction layer above.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffiety/base.hpp"
#include "diffiety/jetspace.hpp"

namespace diffiety {

/* Power product of jet coordinates, factors sorted ascending by coordinate. */
struct Monomial {
    std::vector<std::pair<JetCoord, std::uint32_t>> factors;

    static Monomial one() { return {}; }
    static Monomial coordinate(const JetCoord& c, std::uint32_t e = 1) {
        Monomial m;
        if (e > 0) m.factors.push_back({c, e});
        return m;
    }

    bool is_one() const { return factors.empty(); }

    int degree() const {
        int d = 0;
        for (auto& f : factors) d += static_cast<int>(f.second);
        return d;
    }
    /* Degree counting jet coordinates only / independent variables only. */
    int jet_degree() const {
        int d = 0;
        for (auto& f : factors)
            if (!f.first.is_independent()) d += static_cast<int>(f.second);
        return d;
    }
    int base_degree() const { return degree() - jet_degree(); }

    int max_jet_order() const {
        int d = 0;
        for (auto& f : factors)
            if (f.first.jet_order() > d) d = f.first.jet_order();
        return d;
    }

    std::uint32_t exponent(const JetCoord& c) const {
        for (auto& f : factors)
            if (f.first == c) return f.second;
        return 0;
    }

    Monomial times(const Monomial& o) const;
    std::optional<Monomial> div(const Monomial& o) const;
    Monomial pow(std::uint32_t e) const;

    /* Graded order; ties walk the factor lists from the largest coordinate
     * down, and more of a larger coordinate wins.  Total and canonical. */
    static int cmp(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::cmp(a, b) > 0; }
};

class Poly {
  public:
    using Terms = std::map<Monomial, Rational, MonomialGreater>;

    Poly() = default;
    static Poly zero() { return {}; }
    static Poly constant(const Rational& c);
    static Poly coordinate(const JetCoord& c);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    Rational constant_value() const { return t_.empty() ? Rational(0) : t_.begin()->second; }

    const Terms& terms() const { return t_; }
    std::size_t term_count() const { return t_.size(); }
    const Monomial& leading_monomial() const { return t_.begin()->first; }
    const Rational& leading_coeff() const { return t_.begin()->second; }

    int degree() const;
    int jet_degree() const;
    int base_degree() const;
    int max_jet_order() const;
    int degree_in(const JetCoord& c) const;

    void add_term(const Monomial& m, const Rational& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    Poly pow(std::uint32_t e) const;
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(t_ == o.t_); }

    /* Structural order (term-by-term); used for deterministic containers. */
    static int cmp(const Poly& a, const Poly& b);

    std::set<JetCoord> coords() const;
    bool depends_on(const JetCoord& c) const;

    Poly partial(const JetCoord& c) const;
    Rational eval(const std::map<JetCoord, Rational>& point) const;

    /* Quotient when o divides exactly, nullopt otherwise. */
    std::optional<Poly> div_exact(const Poly& o) const;

    /* Monic gcd over Q; gcd(0,0) = 0. */
    static Poly gcd(const Poly& a, const Poly& b);

    Poly monic() const;

    std::string to_string(const JetSpace& space) const;

  private:
    Terms t_;
};

/* Renders one term; used by the polynomial and form printers so signs and
 * `*` separators come out the same everywhere. */
std::string term_to_string(const Rational& coeff, const std::string& body, bool leading);
std::string rational_to_string(const Rational& r);

}  // namespace diffiety
