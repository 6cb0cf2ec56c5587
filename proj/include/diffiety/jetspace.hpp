#pragma once
/* Coordinates on jet space: independent variables x^mu and jet variables
 * u^j_sigma.  A JetSpace carries the variable names; coordinates themselves
 * are name-free index data so they order and hash cheaply.
 */

#include <string>
#include <vector>

#include "diffiety/base.hpp"
#include "diffiety/multiindex.hpp"

namespace diffiety {

struct JetCoord {
    int dep = -1;     /* -1: independent variable, else dependent index */
    int var = 0;      /* variable index when independent */
    MultiIndex sigma; /* derivative multiindex when a jet coordinate */

    static JetCoord independent(int mu) {
        JetCoord c;
        c.dep = -1;
        c.var = mu;
        return c;
    }

    static JetCoord jet(int j, MultiIndex s = {}) {
        JetCoord c;
        c.dep = j;
        c.sigma = std::move(s);
        return c;
    }

    bool is_independent() const { return dep < 0; }
    int jet_order() const { return dep < 0 ? 0 : sigma.order(); }

    /* Independents first (by variable), then jets by (dependent, sigma). */
    static int cmp(const JetCoord& a, const JetCoord& b) {
        bool ia = a.is_independent(), ib = b.is_independent();
        if (ia != ib) return ia ? -1 : 1;
        if (ia) return a.var < b.var ? -1 : (a.var > b.var ? 1 : 0);
        if (a.dep != b.dep) return a.dep < b.dep ? -1 : 1;
        return MultiIndex::cmp(a.sigma, b.sigma);
    }

    bool operator==(const JetCoord& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const JetCoord& o) const { return cmp(*this, o) != 0; }
    bool operator<(const JetCoord& o) const { return cmp(*this, o) < 0; }
};

struct JetSpace {
    std::vector<std::string> independents;
    std::vector<std::string> dependents;

    int n() const { return static_cast<int>(independents.size()); }
    int m() const { return static_cast<int>(dependents.size()); }

    int find_independent(const std::string& name) const {
        for (int i = 0; i < n(); ++i)
            if (independents[i] == name) return i;
        return -1;
    }

    int find_dependent(const std::string& name) const {
        for (int j = 0; j < m(); ++j)
            if (dependents[j] == name) return j;
        return -1;
    }

    /* u_{xxt}-style name; order 0 jets print bare, order 1..3 as u_xx,
     * higher orders and mixed indices use the braced subscript. */
    std::string coord_name(const JetCoord& c) const {
        if (c.is_independent()) return independents.at(static_cast<std::size_t>(c.var));
        std::string base = dependents.at(static_cast<std::size_t>(c.dep));
        if (c.sigma.order() == 0) return base;
        std::string sub;
        for (std::size_t mu = 0; mu < c.sigma.width(); ++mu)
            for (std::uint32_t r = 0; r < c.sigma.count(mu); ++r)
                sub += independents.at(mu);
        if (sub.size() <= 1) return base + "_" + sub;
        return base + "_{" + sub + "}";
    }

    /* A copy with extra dependent variables appended (adjoint/Green checks
     * quantify over fresh unknowns). */
    JetSpace extended(const std::vector<std::string>& extra) const {
        JetSpace s = *this;
        for (const auto& name : extra) s.dependents.push_back(name);
        return s;
    }

    bool same_as(const JetSpace& o) const {
        return independents == o.independents && dependents == o.dependents;
    }
};

}  // namespace diffiety
