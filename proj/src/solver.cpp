#include "diffiety/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <sstream>

#include "diffiety/multiindex.hpp"

namespace diffiety {

std::vector<Expr> scalar_monomials(const EquationSystem& E, const AnsatzSpace& A) {
    const std::vector<JetCoord> coords = E.internal_coords(A.max_order);

    /* Multisets of jet coordinates up to max_degree; each monomial is reached
     * along exactly one path, with factors pushed in ascending order. */
    std::vector<Monomial> jets;
    std::vector<std::pair<JetCoord, std::uint32_t>> stack;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        Monomial m;
        m.factors = stack;
        jets.push_back(std::move(m));
        for (std::size_t j = i; j < coords.size(); ++j)
            for (int e = 1; e <= left; ++e) {
                stack.push_back({coords[j], static_cast<std::uint32_t>(e)});
                rec(j + 1, left - e);
                stack.pop_back();
            }
    };
    rec(0, A.max_degree);

    std::vector<Monomial> all;
    if (A.with_xt) {
        const int n = E.space().n();
        for (const MultiIndex& nu : multiindices_up_to(n, A.xt_degree)) {
            Monomial base;
            for (int mu = 0; mu < n; ++mu) {
                JetCoord x;
                x.var = mu;
                base = base.times(Monomial::coordinate(x, nu.count(static_cast<std::size_t>(mu))));
            }
            for (const Monomial& m : jets) all.push_back(m.times(base));
        }
    } else {
        all = jets;
    }
    std::sort(all.begin(), all.end());

    std::vector<Expr> out;
    out.reserve(all.size());
    for (const Monomial& m : all) {
        Poly p;
        p.add_term(m, 1);
        out.push_back(Expr(p));
    }
    return out;
}

std::vector<std::vector<IDGen>> generator_words(const EquationSystem& E, int slots,
                                                int max_order,
                                                const std::vector<int>& target) {
    if (static_cast<int>(target.size()) != slots)
        throw shape_error("generator_words: target length must equal the slot count");
    for (int t : target)
        if (t < 0) return {};

    std::vector<IDGen> gens;
    if (slots > 0) {
        const std::vector<JetCoord> coords = E.internal_coords(max_order);
        for (SlotSet K = 1; K < (1u << slots); ++K)
            for (const JetCoord& c : coords) gens.push_back({K, c});
    }

    std::vector<std::vector<IDGen>> out;
    std::vector<IDGen> word;
    std::vector<int> left = target;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        bool done = true;
        for (int t : left)
            if (t != 0) done = false;
        if (done) { /* every generator has positive degree, so stop here */
            out.push_back(word);
            return;
        }
        if (idx == gens.size()) return;
        rec(idx + 1);
        const IDGen& g = gens[idx];
        int cap = 0;
        for (int i = 1; i <= slots; ++i)
            if (slot_in(g.K, i)) cap = (cap == 0) ? left[i - 1] : std::min(cap, left[i - 1]);
        if (slot_count(g.K) % 2 == 1) cap = std::min(cap, 1); /* odd generators square to zero */
        for (int mult = 1; mult <= cap; ++mult) {
            for (int i = 1; i <= slots; ++i)
                if (slot_in(g.K, i)) left[i - 1] -= 1;
            word.push_back(g);
            rec(idx + 1);
        }
        for (int mult = static_cast<int>(word.size()); mult > 0 && word.back() == g; --mult) {
            word.pop_back();
            for (int i = 1; i <= slots; ++i)
                if (slot_in(g.K, i)) left[i - 1] += 1;
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const std::vector<IDGen>& a, const std::vector<IDGen>& b) {
        IDMonomial ma{a}, mb{b};
        return IDMonomial::cmp(ma, mb) < 0;
    });
    return out;
}

BlockAnsatz block_ansatz(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    if (k < 1 || p < 1) throw shape_error("block_ansatz: need k >= 1 and p >= 1");
    if (A.cartan_degree < 0) throw shape_error("block_ansatz: negative cartan_degree");
    if (k == 1 && A.cartan_degree != 0)
        throw shape_error("block_ansatz: cartan_degree grades the lower slots; there are none at k = 1");

    BlockAnsatz out;
    out.slots = (p >= 2) ? k : k - 1;
    out.blocks = lifted_blocks(E.space().m(), k);

    const std::vector<Expr> monos = scalar_monomials(E, A);
    for (const auto& [dep, K] : out.blocks) {
        (void)dep;
        std::vector<int> target(static_cast<std::size_t>(out.slots), 0);
        bool dead = false;
        for (int i = 1; i <= k - 1; ++i) {
            target[i - 1] = A.cartan_degree - (slot_in(K, i) ? 1 : 0);
            if (target[i - 1] < 0) dead = true;
        }
        if (p >= 2) target[static_cast<std::size_t>(k - 1)] = p - 1;
        if (dead) {
            out.basis.emplace_back();
            continue;
        }
        std::vector<IDForm> basis;
        for (const auto& word : generator_words(E, out.slots, A.max_order, target))
            for (const Expr& m : monos) basis.push_back(IDForm::term(out.slots, word, m));
        out.basis.push_back(std::move(basis));
    }

    if (out.total_columns() > A.cap) {
        std::ostringstream msg;
        msg << "ansatz has " << out.total_columns() << " candidates, over the cap of " << A.cap;
        throw ansatz_overflow_error(msg.str());
    }
    return out;
}

ColumnTerms determining_column(const CDiffOp& op, int n_blocks, int block,
                               const IDForm& candidate, const EquationSystem& eq) {
    std::vector<IDForm> arg(static_cast<std::size_t>(n_blocks), IDForm(candidate.slots()));
    arg[static_cast<std::size_t>(block)] = candidate;
    const std::vector<IDForm> image = apply_internal(op, arg, eq);

    ColumnTerms out;
    for (std::size_t r = 0; r < image.size(); ++r)
        for (const auto& [word, coeff] : image[r].terms()) {
            if (!coeff.is_polynomial())
                throw error("determining system rows must be polynomial; got " +
                            coeff.to_string(eq.space()));
            for (const auto& [mono, q] : coeff.num().terms())
                out.push_back({RowKey{static_cast<int>(r), word, mono}, q});
        }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<ColumnTerms> determining_columns(const CDiffOp& op, const BlockAnsatz& ansatz,
                                             const EquationSystem& eq, bool parallel) {
    std::vector<std::pair<int, const IDForm*>> cols;
    for (std::size_t b = 0; b < ansatz.basis.size(); ++b)
        for (const IDForm& w : ansatz.basis[b]) cols.push_back({static_cast<int>(b), &w});

    const int n_blocks = static_cast<int>(ansatz.blocks.size());
    std::vector<ColumnTerms> out(cols.size());

    if (parallel) {
        std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(cols.size()); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = determining_column(
                    op, n_blocks, cols[static_cast<std::size_t>(i)].first,
                    *cols[static_cast<std::size_t>(i)].second, eq);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return out;
    }

    for (std::size_t i = 0; i < cols.size(); ++i)
        out[i] = determining_column(op, n_blocks, cols[i].first, *cols[i].second, eq);
    return out;
}

namespace {

/* Scale to a primitive integer vector whose first nonzero entry is positive. */
void normalize_kernel_vector(std::vector<Rational>& v) {
    Integer num_gcd = 0, den_lcm = 1;
    for (const Rational& q : v) {
        if (q == 0) continue;
        num_gcd = gcd(num_gcd, Integer(abs(numerator(q))));
        den_lcm = lcm(den_lcm, Integer(denominator(q)));
    }
    if (num_gcd == 0) return;
    Rational scale(den_lcm, num_gcd);
    for (const Rational& q : v)
        if (q != 0) {
            if (q * scale < 0) scale = -scale;
            break;
        }
    for (Rational& q : v) q *= scale;
}

}  // namespace

KernelBasis solve_kernel(const CDiffOp& op, const BlockAnsatz& ansatz,
                         const EquationSystem& eq, bool parallel) {
    if (op.cols() != static_cast<int>(ansatz.blocks.size()))
        throw shape_error("solve_kernel: operator width does not match the block count");

    const std::vector<ColumnTerms> cols = determining_columns(op, ansatz, eq, parallel);

    std::map<RowKey, SparseRow> rows;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [key, q] : cols[j]) rows[key].push_back({static_cast<int>(j), q});

    std::vector<SparseRow> mat;
    mat.reserve(rows.size());
    for (auto& [key, row] : rows) {
        (void)key;
        mat.push_back(std::move(row));
    }

    const int n_cols = static_cast<int>(cols.size());
    const RrefResult rr = rref(mat, n_cols);

    KernelBasis out;
    out.blocks = ansatz.blocks;
    out.n_rows = mat.size();
    out.n_cols = static_cast<std::size_t>(n_cols);
    out.rank = rr.pivot_cols.size();

    for (std::vector<Rational> v : nullspace(rr.rows, n_cols)) {
        normalize_kernel_vector(v);
        std::vector<IDForm> tuple(ansatz.blocks.size(), IDForm(ansatz.slots));
        std::size_t j = 0;
        for (std::size_t b = 0; b < ansatz.basis.size(); ++b)
            for (const IDForm& w : ansatz.basis[b]) {
                if (v[j] != 0) tuple[b] += w.scaled(Expr(v[j]));
                ++j;
            }
        for (const IDForm& w : apply_internal(op, tuple, eq))
            if (!w.is_zero()) throw error("solve_kernel: re-verification failed");
        out.elements.push_back(std::move(tuple));
    }
    return out;
}

std::vector<Section> KernelBasis::sections() const {
    std::vector<Section> out;
    for (const auto& tuple : elements) {
        Section s;
        for (const IDForm& w : tuple) {
            if (!w.is_scalar()) throw shape_error("kernel element carries generator words");
            s.push_back(w.scalar_part());
        }
        out.push_back(std::move(s));
    }
    return out;
}

KernelBasis symmetries(const EquationSystem& E, const AnsatzSpace& A) {
    const CDiffOp op = restrict_operator(linearize(E), E);
    return solve_kernel(op, block_ansatz(E, 1, 1, A), E);
}

KernelBasis cosymmetries(const EquationSystem& E, const AnsatzSpace& A) {
    const CDiffOp op = restrict_operator(adjoint(linearize(E), E.space()), E);
    return solve_kernel(op, block_ansatz(E, 1, 1, A), E);
}

KernelBasis lifted_cosymmetries(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    if (k < 1 || p < 1) throw shape_error("lifted_cosymmetries: need k >= 1 and p >= 1");
    const CDiffOp base = restrict_operator(adjoint(lift_linearize(E, k), E.space()), E);
    const CDiffOp op = extend_p(base, p - 1, k);
    return solve_kernel(op, block_ansatz(E, k, p, A), E);
}

namespace {

/* E_a(g) = sum over jet coordinates of D_sigma(a^j) dg/du^j_sigma, with the
 * internal total derivatives. */
Expr evolutionary_apply(const Section& a, const Expr& g, const EquationSystem& E) {
    Expr out;
    for (const JetCoord& c : g.coords()) {
        if (c.is_independent()) continue;
        out += E.total_derivative_internal(a[static_cast<std::size_t>(c.dep)], c.sigma) *
               g.partial(c);
    }
    return out;
}

}  // namespace

Section lie_bracket(const Section& a, const Section& b, const EquationSystem& E) {
    const std::size_t m = static_cast<std::size_t>(E.space().m());
    if (a.size() != m || b.size() != m)
        throw shape_error("lie_bracket: sections need one component per dependent");
    const Section ra = E.restrict(a), rb = E.restrict(b);
    Section out;
    for (std::size_t j = 0; j < m; ++j)
        out.push_back(evolutionary_apply(ra, rb[j], E) - evolutionary_apply(rb, ra[j], E));
    return out;
}

namespace {

SparseRow section_row(const Section& s, const std::map<std::pair<int, Monomial>, int>& index) {
    SparseRow r;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (const auto& [mono, q] : s[i].num().terms())
            r.push_back({index.at({static_cast<int>(i), mono}), q});
    std::sort(r.begin(), r.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
}

}  // namespace

bool in_span(const std::vector<Section>& basis, const Section& v) {
    std::map<std::pair<int, Monomial>, int> index;
    auto touch = [&](const Section& s) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_polynomial()) throw shape_error("in_span expects polynomial sections");
            if (!basis.empty() && s.size() != basis.front().size())
                throw shape_error("in_span: component count mismatch");
            for (const auto& [mono, q] : s[i].num().terms()) {
                (void)q;
                index.emplace(std::make_pair(static_cast<int>(i), mono), 0);
            }
        }
    };
    for (const Section& s : basis) touch(s);
    touch(v);
    int n = 0;
    for (auto& [key, id] : index) {
        (void)key;
        id = n++;
    }

    std::vector<SparseRow> rows;
    for (const Section& s : basis) rows.push_back(section_row(s, index));
    const int r0 = rank(rows, n);
    rows.push_back(section_row(v, index));
    return rank(rows, n) == r0;
}

bool spans_equal(const std::vector<Section>& a, const std::vector<Section>& b) {
    for (const Section& v : a)
        if (!in_span(b, v)) return false;
    for (const Section& v : b)
        if (!in_span(a, v)) return false;
    return true;
}

}  // namespace diffiety
