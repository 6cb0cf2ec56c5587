#pragma once
/* Operators in total derivatives.
 *
 * A CDiffOp is a matrix whose entries are finite sums  sum_sigma a_sigma D_sigma
 * with iterated-form coefficients, kept in coefficients-left normal form.
 * Composition and adjoints move total derivatives across coefficients by the
 * Leibniz rule; D_sigma itself is an even derivation, so the only signs in
 * sight are the (-1)^|sigma| of integration by parts.
 *
 * The same matrix can be read over the free jet space or over an equation
 * (internal coordinates); the context is supplied per call rather than stored.
 */

#include <utility>

#include "diffiety/idform.hpp"

namespace diffiety {

class CDiffOp {
  public:
    /* sigma -> coefficient; absent entries are zero. */
    using Entry = std::map<MultiIndex, IDForm>;

    CDiffOp(int rows, int cols, int slots) : rows_(rows), cols_(cols), slots_(slots) {}

    static CDiffOp identity(int size, int slots);
    /* 1x1 helpers: multiplication by a scalar, and a bare D_sigma. */
    static CDiffOp scalar_op(const Expr& e, int slots);
    static CDiffOp total_op(const MultiIndex& sigma, int slots);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int slots() const { return slots_; }

    const Entry& entry(int r, int c) const;
    void add_term(int r, int c, const MultiIndex& sigma, const IDForm& coeff);
    void set_entry(int r, int c, Entry e);

    bool is_zero() const { return entries_.empty(); }
    int max_order() const;

    CDiffOp operator+(const CDiffOp& o) const;
    CDiffOp operator-(const CDiffOp& o) const;
    CDiffOp operator-() const;
    bool operator==(const CDiffOp& o) const;
    bool operator!=(const CDiffOp& o) const { return !(*this == o); }

    /* Coefficients embedded into a wider slot range. */
    CDiffOp reslotted(int slots) const;

    /* 1x1 operators print bare ("-Dt + 6*u*Dx + Dx^3"), matrices one line
     * per entry. */
    std::string to_string(const JetSpace& space) const;

    const std::map<std::pair<int, int>, Entry>& entries() const { return entries_; }

  private:
    int rows_, cols_, slots_;
    std::map<std::pair<int, int>, Entry> entries_;
};

/* "Dx^2*Dt" for the printable form of D_sigma; empty sigma gives "1". */
std::string total_word(const MultiIndex& sigma, const JetSpace& space);
std::string entry_to_string(const CDiffOp::Entry& e, const JetSpace& space);

/* A . D_sigma(arg): matrix application, free and on-equation versions.  The
 * argument tuple is indexed like the operator's columns. */
std::vector<IDForm> apply(const CDiffOp& A, const std::vector<IDForm>& arg, const JetSpace& space);
std::vector<IDForm> apply_internal(const CDiffOp& A, const std::vector<IDForm>& arg,
                                   const EquationSystem& eq);
/* Scalar-coefficient convenience on plain sections. */
Section apply(const CDiffOp& A, const Section& arg, const JetSpace& space);
Section apply_internal(const CDiffOp& A, const Section& arg, const EquationSystem& eq);

/* Matrix product with D_sigma moved right via Leibniz. */
CDiffOp compose(const CDiffOp& A, const CDiffOp& B, const JetSpace& space);
CDiffOp compose_internal(const CDiffOp& A, const CDiffOp& B, const EquationSystem& eq);

/* Formal adjoint: entrywise transpose of sum (-1)^|sigma| D_sigma o a_sigma,
 * re-normalized to coefficients-left form. */
CDiffOp adjoint(const CDiffOp& A, const JetSpace& space);
CDiffOp adjoint_internal(const CDiffOp& A, const EquationSystem& eq);

/* Coefficients restricted to the equation; the matrix shape is unchanged and
 * subsequent applications should use the internal context. */
CDiffOp restrict_operator(const CDiffOp& A, const EquationSystem& eq);

/* Linearization of F^a = u^a_t - f^a: entry (a, j) = sum ∂F^a/∂u^j_sigma D_sigma,
 * scalar coefficients. */
CDiffOp linearize(const EquationSystem& E, int slots = 0);

/* Row/column index of the lifted operators: pairs (dependent, K) with K
 * running over subsets of {1..k-1}, ordered by |K|, then K, then dependent. */
std::vector<std::pair<int, SlotSet>> lifted_blocks(int m, int k);

/* Linearization of the family d_K^v F^a: block entry ((a,K),(j,L)) is
 * sum_sigma d^v_{K\L}(∂F^a/∂u^j_sigma) D_sigma for L ⊆ K and zero otherwise.
 * k = 1 reduces to linearize(E). */
CDiffOp lift_linearize(const EquationSystem& E, int k);

/* Extension to arguments carrying slot-k Cartan factors: for p >= 1 the same
 * matrix read over k slots (total derivatives reach across the extra factor
 * by the Leibniz rule inside total_derivative_idf); p = 0 is the operator
 * itself. */
CDiffOp extend_p(const CDiffOp& A, int p, int k);

/* Wedge of split tensor factors, and the degree-splitting right inverse:
 * include_p breaks each slot-k Cartan factor off in turn with weight 1/p, so
 * alt_p(include_p(w)) = w for slot-k Cartan degree-p forms. */
IDForm alt_p(const std::vector<std::pair<IDForm, IDForm>>& tensor);
std::vector<std::pair<IDForm, IDForm>> include_p(const IDForm& w, int p, int k);

/* Pair a block-indexed tuple with the order-zero slot-k Cartan generators:
 * sum_i psi_i * dv[K_i + {k}]u^{a_i}. */
IDForm pair_with_duals(const std::vector<IDForm>& tuple,
                       const std::vector<std::pair<int, SlotSet>>& blocks, int k);

/* Green identity test for the adjoint: with fresh dependents phi, psi,
 * psi·A(phi) - adj(A)(psi)·phi must be a total divergence. */
bool green_check(const CDiffOp& A, const JetSpace& space);

}  // namespace diffiety
