#pragma once
/* Determining-equation solver.
 *
 * A symmetry/cosymmetry search is a linear problem: apply the relevant
 * operator (restricted to the equation) to a finite-dimensional ansatz of
 * polynomial candidates and compute the exact kernel of the resulting
 * coefficient matrix.  Rows are indexed by (operator row, generator word,
 * monomial) triples, columns by candidate basis elements, and the matrix
 * lives over Q, so the answer is exact within the configured bounds.
 */

#include <string>
#include <utility>
#include <vector>

#include "cdiff.hpp"
#include "equation.hpp"
#include "idform.hpp"
#include "linalg.hpp"

namespace diffiety {

/* Bounds for candidate enumeration.  `max_order` caps the jet order of both
 * the monomial factors and the vertical generators, `max_degree` caps the
 * polynomial degree in the jet coordinates (generator words do not count
 * towards it), and `with_xt` adds explicit x/t factors of total degree at
 * most `xt_degree`.  `cartan_degree` selects the vertical degree of the
 * leading (K = {}) component in lifted searches; it must be 0 for plain
 * symmetry/cosymmetry runs. */
struct AnsatzSpace {
    int max_order = 1;
    int max_degree = 1;
    bool with_xt = false;
    int xt_degree = 1;
    int cartan_degree = 0;
    std::size_t cap = 20000; /* hard limit on candidate count */
};

/* One row index of the determining system. */
struct RowKey {
    int component = 0; /* operator row */
    IDMonomial word;
    Monomial mono;

    bool operator<(const RowKey& o) const {
        if (component != o.component) return component < o.component;
        int c = IDMonomial::cmp(word, o.word);
        if (c != 0) return c < 0;
        return Monomial::cmp(mono, o.mono) < 0;
    }
    bool operator==(const RowKey& o) const {
        return component == o.component && word == o.word && mono == o.mono;
    }
};

using ColumnTerms = std::vector<std::pair<RowKey, Rational>>;

/* Candidate scalar monomials: products of internal jet coordinates of order
 * <= A.max_order and degree <= A.max_degree, optionally multiplied by x/t
 * powers of total degree <= A.xt_degree.  Sorted ascending. */
std::vector<Expr> scalar_monomials(const EquationSystem& E, const AnsatzSpace& A);

/* Vertical generator words over slots {1..slots} with the given multidegree
 * target (target[i-1] = required degree in slot i).  Generators range over
 * internal coordinates of order <= max_order; words are canonically sorted
 * and repeated odd generators are skipped.  Sorted ascending. */
std::vector<std::vector<IDGen>> generator_words(const EquationSystem& E, int slots,
                                                int max_order,
                                                const std::vector<int>& target);

/* Candidate basis for every lifted block (a, K): scalar monomials times
 * generator words whose multidegree is cartan_degree - [i in K] in each lower
 * slot i and p - 1 in slot k.  A negative target in any slot forces the
 * component to zero (empty basis).  For k = 1, p = 1 this degenerates to the
 * scalar ansatz on each dependent. */
struct BlockAnsatz {
    std::vector<std::pair<int, SlotSet>> blocks;
    std::vector<std::vector<IDForm>> basis; /* per block, ascending */
    int slots = 0;

    std::size_t total_columns() const {
        std::size_t n = 0;
        for (const auto& b : basis) n += b.size();
        return n;
    }
};
BlockAnsatz block_ansatz(const EquationSystem& E, int k, int p, const AnsatzSpace& A);

/* Sparse column of the determining system: the operator applied to a single
 * candidate sitting in component `block`, decomposed into row keys.  Throws
 * if an image coefficient is not polynomial. */
ColumnTerms determining_column(const CDiffOp& op, int n_blocks, int block,
                               const IDForm& candidate, const EquationSystem& eq);

/* All columns of the determining system, in ansatz order.  The parallel path
 * distributes columns across OpenMP threads; results are identical to the
 * serial path (kept as the reference implementation for testing). */
std::vector<ColumnTerms> determining_columns(const CDiffOp& op, const BlockAnsatz& ansatz,
                                             const EquationSystem& eq, bool parallel);

/* Exact kernel of a determining system, with every element re-verified by
 * applying the operator once more. */
struct KernelBasis {
    std::vector<std::pair<int, SlotSet>> blocks;
    std::vector<std::vector<IDForm>> elements; /* one tuple per kernel vector */
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::size_t rank = 0;

    std::size_t dim() const { return elements.size(); }

    /* Scalar kernels (single block, no generator word) as plain sections. */
    std::vector<Section> sections() const;
};

KernelBasis solve_kernel(const CDiffOp& op, const BlockAnsatz& ansatz,
                         const EquationSystem& eq, bool parallel = true);

/* Evolutionary symmetries: kernel of the restricted linearization. */
KernelBasis symmetries(const EquationSystem& E, const AnsatzSpace& A);

/* Cosymmetries: kernel of the restricted adjoint linearization. */
KernelBasis cosymmetries(const EquationSystem& E, const AnsatzSpace& A);

/* Kernel of the restricted adjoint of the k-fold lifted linearization,
 * extended to act on vertical degree p in the top slot.  Components carry
 * the block multidegrees described at block_ansatz; p = 1, k = 1 reduces to
 * cosymmetries. */
KernelBasis lifted_cosymmetries(const EquationSystem& E, int k, int p,
                                const AnsatzSpace& A);

/* Jacobi bracket of evolutionary sections: E_a(b) - E_b(a) componentwise,
 * computed in internal coordinates. */
Section lie_bracket(const Section& a, const Section& b, const EquationSystem& E);

/* Exact span membership / equality for polynomial sections. */
bool in_span(const std::vector<Section>& basis, const Section& v);
bool spans_equal(const std::vector<Section>& a, const std::vector<Section>& b);

}  // namespace diffiety
