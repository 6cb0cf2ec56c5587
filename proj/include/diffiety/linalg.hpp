#pragma once
/* Exact rational linear algebra on sparse rows, deterministic throughout:
 * rows are processed in the order given and pivots are always the leftmost
 * surviving column, so identical inputs give identical reduced forms,
 * nullspace bases and pivot sets.
 */

#include <vector>

#include "diffiety/base.hpp"

namespace diffiety {

/* (column, value) pairs with strictly increasing columns, no zeros. */
using SparseRow = std::vector<std::pair<int, Rational>>;

struct RrefResult {
    std::vector<SparseRow> rows; /* reduced, leading 1, sorted by pivot column */
    std::vector<int> pivot_cols; /* ascending */
};

RrefResult rref(const std::vector<SparseRow>& rows, int cols);

int rank(const std::vector<SparseRow>& rows, int cols);

/* Basis of {x : Mx = 0}; one dense vector per free column, ascending, with
 * the free coordinate set to 1. */
std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& rows, int cols);

/* Pivot coordinates of the column space inside the target: unit vectors at
 * the complementary coordinates represent a basis of the cokernel. */
std::vector<int> column_space_pivots(const std::vector<SparseRow>& rows, int target_dim);

}  // namespace diffiety
