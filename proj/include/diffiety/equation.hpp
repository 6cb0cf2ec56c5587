#pragma once
/* Evolution systems u^j_t = f^j and the induced internal coordinates.
 *
 * For a system solved with respect to the leading variable t, the jet
 * coordinates free of t-derivatives survive on the equation's infinite
 * prolongation; every other coordinate rewrites through the equation.
 * restrict() realizes that rewriting; internal total derivatives are the
 * restricted ones.  Rewrites are memoized (thread-safe, the solver hits
 * this from parallel loops).
 */

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "diffiety/jetcalc.hpp"

namespace diffiety {

struct NormalFormReport {
    bool ok = true;
    std::vector<std::string> issues;
};

/* Structural evolution-form check on raw data: one equation per dependent,
 * right-hand sides free of leading-variable derivatives, polynomial. */
NormalFormReport check_normal_form(const JetSpace& space, int leading, const Section& rhs);

class EquationSystem {
  public:
    /* Throws shape_error when check_normal_form fails. */
    EquationSystem(JetSpace space, Section rhs, int leading = -1, std::string name = "");

    const JetSpace& space() const { return space_; }
    const std::string& name() const { return name_; }
    int leading() const { return leading_; }
    const Expr& rhs(int j) const { return rhs_.at(static_cast<std::size_t>(j)); }
    const Section& rhs() const { return rhs_; }

    NormalFormReport normal_form() const { return check_normal_form(space_, leading_, rhs_); }

    int order_cap() const { return cap_; }
    void set_order_cap(int cap) { cap_ = cap; }

    /* t-derivative-free coordinates survive restriction. */
    bool is_internal_coord(const JetCoord& c) const {
        return c.is_independent() || c.sigma.count(static_cast<std::size_t>(leading_)) == 0;
    }
    bool is_internal(const Expr& e) const;

    /* Rewrites every t-derivative coordinate through the equation; idempotent.
     * Throws prolongation_limit_error past the order cap. */
    Expr restrict(const Expr& e) const;
    Section restrict(const Section& f) const;

    /* Restricted total derivative; internal D's commute. */
    Expr total_derivative_internal(const Expr& e, std::size_t mu) const;
    Expr total_derivative_internal(const Expr& e, const MultiIndex& sigma) const;

    /* Internal form of D_sigma(f^j), i.e. of the coordinate u^j_{sigma+t}. */
    Expr expanded_rhs(int j, const MultiIndex& sigma) const;

    /* All internal jet coordinates of order <= max_order, canonical order. */
    std::vector<JetCoord> internal_coords(int max_order) const;

  private:
    JetSpace space_;
    Section rhs_;
    int leading_;
    std::string name_;
    int cap_ = 24;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<int, MultiIndex>, Expr> cache_;
};

/* Parses the sectioned textual format:
 *
 *   [system]
 *   name = kdv
 *   independent = x, t
 *   dependent = u
 *   leading = t          # optional, defaults to the last independent
 *
 *   [equations]
 *   u_t = 6*u*u_x + u_{xxx}
 *
 * '#' starts a comment.  Throws parse_error with a line-aware message. */
EquationSystem parse_system(const std::string& text);

}  // namespace diffiety
