#pragma once
/* First-page survey of the lifted C-spectral sequence at bounded order.
 *
 * For an l-normal evolution system the first term concentrates on the two
 * lines q = n-1 (kernel of the lifted adjoint) and q = n (its cokernel);
 * everything below vanishes.  A report collects, per q: exact kernel bases,
 * truncated cokernel data, and vanishing evidence, all computed inside a
 * polynomial ansatz and tagged with the system dimensions needed to re-check
 * the claim independently.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "diffiety/solver.hpp"

namespace diffiety {

struct E1Cell {
    int q = 0;              /* -1 marks a note about the whole p = 0 column */
    std::string kind;       /* "vanishing" | "kernel" | "cokernel" | "note" */
    bool certified = false; /* exact within bounds, as opposed to truncated */
    std::vector<std::string> basis;
    std::size_t rows = 0, cols = 0, rank = 0;
    long dim = -1; /* -1: no dimension computed */
    std::string note;
};

struct E1Report {
    std::string system;
    int k = 1;
    int p = 1;
    int n = 2; /* number of independents */
    AnsatzSpace config;
    std::vector<E1Cell> cells; /* ascending in q */
};

/* The p = 0 column is not recomputed: for k >= 2 it restates the full report
 * one level down, and for k = 1 it is horizontal cohomology, outside the
 * scope of this tool. */
E1Cell zero_column_note(const EquationSystem& E, int k);

E1Report two_lines_report(const EquationSystem& E, int k, int p, const AnsatzSpace& A);

nlohmann::ordered_json report_json(const E1Report& r);
std::string to_json_string(const E1Report& r);

}  // namespace diffiety
