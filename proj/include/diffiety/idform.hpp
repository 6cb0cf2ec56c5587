#pragma once
/* Iterated differential forms.
 *
 * The algebra for k slots is generated over scalar expressions by
 *
 *   d[K]x^mu   (horizontal base differentials)
 *   dv[K]u_s   (vertical jet differentials)
 *
 * where K is a nonempty subset of {1..slots}.  A generator's multidegree is
 * the indicator vector of K, and two generators commute up to the Koszul
 * sign (-1)^(K1.K2) with the dot product of indicator vectors.  In
 * particular generators with an odd number of slots square to zero while
 * even ones behave symmetrically.
 */

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "diffiety/equation.hpp"

namespace diffiety {

/* Slots are 1-based externally; bit i-1 represents slot i. */
using SlotSet = std::uint32_t;

inline SlotSet slot_bit(int i) { return 1u << (i - 1); }
inline int slot_count(SlotSet k) { return __builtin_popcount(k); }
inline bool slot_in(SlotSet k, int i) { return (k & slot_bit(i)) != 0; }
std::string slots_to_string(SlotSet k);

struct IDGen {
    SlotSet K = 0;
    JetCoord coord; /* independent: d[K]x ; jet: dv[K]u_sigma */

    bool vertical() const { return !coord.is_independent(); }

    /* Koszul exponent between two generators. */
    static int pairing(const IDGen& a, const IDGen& b) { return slot_count(a.K & b.K); }

    static int cmp(const IDGen& a, const IDGen& b) {
        if (a.K != b.K) return a.K < b.K ? -1 : 1;
        return JetCoord::cmp(a.coord, b.coord);
    }
    bool operator==(const IDGen& o) const { return cmp(*this, o) == 0; }
    bool operator<(const IDGen& o) const { return cmp(*this, o) < 0; }
};

struct IDMonomial {
    std::vector<IDGen> gens; /* canonically sorted; repeats only for even gens */

    int degree() const { return static_cast<int>(gens.size()); }
    int degree_in_slot(int i) const {
        int d = 0;
        for (const auto& g : gens)
            if (slot_in(g.K, i)) ++d;
        return d;
    }
    bool is_scalar() const { return gens.empty(); }

    static int cmp(const IDMonomial& a, const IDMonomial& b);
    bool operator==(const IDMonomial& o) const { return gens == o.gens; }
    bool operator<(const IDMonomial& o) const { return cmp(*this, o) < 0; }
};

class IDForm {
  public:
    using Terms = std::map<IDMonomial, Expr>;

    explicit IDForm(int slots = 0) : slots_(slots) {}
    static IDForm from_expr(const Expr& e, int slots);
    static IDForm generator(const IDGen& g, int slots);
    /* Sorts the generator word, folding in the Koszul sign; a repeated odd
     * generator kills the term. */
    static IDForm term(int slots, std::vector<IDGen> gens, const Expr& coeff);

    int slots() const { return slots_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const;
    Expr scalar_part() const; /* coefficient of the empty word */

    void add_term(const IDMonomial& m, const Expr& c);

    IDForm operator-() const;
    IDForm operator+(const IDForm& o) const;
    IDForm operator-(const IDForm& o) const;
    IDForm operator*(const IDForm& o) const;
    IDForm scaled(const Expr& c) const;
    IDForm& operator+=(const IDForm& o) { return *this = *this + o; }
    IDForm& operator-=(const IDForm& o) { return *this = *this - o; }
    bool operator==(const IDForm& o) const { return slots_ == o.slots_ && terms_ == o.terms_; }
    bool operator!=(const IDForm& o) const { return !(*this == o); }

    /* Same terms over a wider slot range (embedding into more slots). */
    IDForm reslotted(int slots) const;

    int max_total_degree() const;
    int max_jet_order() const;

    std::string to_string(const JetSpace& space) const;

  private:
    int slots_;
    Terms terms_;
};

namespace detail {
/* Generic graded derivation: coefficient images multiply from the left, and
 * passing the operator over a generator with slot set K costs
 * (-1)^(delta . K).  delta = 0 gives an even derivation. */
IDForm apply_derivation(const IDForm& w, SlotSet delta,
                        const std::function<IDForm(const Expr&)>& derive_coeff,
                        const std::function<IDForm(const IDGen&)>& derive_gen);
}  // namespace detail

/* Vertical slot differential: graded derivation of multidegree e_i with
 * dv[K] -> dv[K+i], d[K] -> d[K+i] on generators (zero when i in K) and the
 * chain rule through jet coordinates on coefficients. */
IDForm d_vertical(const IDForm& w, int i);

/* Horizontal slot differential, free and on-equation versions:
 * d_i^h(w) = sum_mu d[i]x^mu * D_mu(w). */
IDForm d_horizontal(const IDForm& w, int i, const JetSpace& space);
IDForm d_horizontal_internal(const IDForm& w, int i, const EquationSystem& eq);

/* Full slot differential d_i = d_i^h + d_i^v. */
IDForm d_slot(const IDForm& w, int i, const JetSpace& space);
IDForm d_slot_internal(const IDForm& w, int i, const EquationSystem& eq);

/* Iterated vertical differential dv[K] = dv[i_1] o ... o dv[i_r], i_1<...<i_r. */
IDForm d_K_vertical(const IDForm& w, SlotSet K);

/* Total derivative extended to forms: D_mu(d[K]x) = 0 and
 * D_mu(dv[K]u_sigma) = dv[K]u_{sigma+mu}; even derivation. */
IDForm total_derivative_idf(const IDForm& w, std::size_t mu, const JetSpace& space);
IDForm total_derivative_idf(const IDForm& w, const MultiIndex& sigma, const JetSpace& space);
IDForm total_derivative_idf_internal(const IDForm& w, std::size_t mu, const EquationSystem& eq);
IDForm total_derivative_idf_internal(const IDForm& w, const MultiIndex& sigma,
                                     const EquationSystem& eq);

/* No horizontal generators in any term. */
bool is_cartan(const IDForm& w);

/* Restriction to the equation: rewrites coefficients and vertical generators
 * with t-derivatives through dv[K] of the internal coordinate values. */
IDForm restrict_idform(const IDForm& w, const EquationSystem& eq);

/* Parser for the printable syntax, e.g. "dv[1]u_x*d[2]x + 3*u*dv[1,2]u". */
IDForm parse_idform(const std::string& text, const JetSpace& space, int slots);

}  // namespace diffiety
