#include "diffiety/report.hpp"

#include <map>
#include <sstream>

namespace diffiety {

namespace {

/* Realize a block tuple as a single form: wedge each component against the
 * order-zero slot-k generator dual to its block.  This is the alternation of
 * the split tensor; for p = 1 the generator simply multiplies the scalar. */
IDForm alt_representative(const std::vector<IDForm>& tuple,
                          const std::vector<std::pair<int, SlotSet>>& blocks, int k) {
    std::vector<std::pair<IDForm, IDForm>> tensor;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (tuple[i].is_zero()) continue;
        IDGen g{blocks[i].second | slot_bit(k), JetCoord{blocks[i].first, 0, MultiIndex()}};
        tensor.push_back({IDForm::generator(g, k), tuple[i].reslotted(k)});
    }
    if (tensor.empty()) return IDForm(k);
    return alt_p(tensor);
}

/* Every row below q = n-1 is expected to carry nothing: solve for the
 * kernel of the slot-k horizontal differential on bounded Cartan forms
 * and record the dimensions of the system that witnessed it. */
E1Cell vanishing_cell(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    BlockAnsatz forms;
    forms.slots = k;
    forms.blocks = {{0, 0}};
    std::vector<int> target(static_cast<std::size_t>(k), A.cartan_degree);
    target[static_cast<std::size_t>(k - 1)] = p;
    std::vector<IDForm> basis;
    for (const auto& word : generator_words(E, k, A.max_order, target))
        for (const Expr& m : scalar_monomials(E, A)) basis.push_back(IDForm::term(k, word, m));
    forms.basis.push_back(std::move(basis));
    if (forms.total_columns() > A.cap) {
        std::ostringstream msg;
        msg << "vanishing cell ansatz has " << forms.total_columns()
            << " candidates, over the cap of " << A.cap;
        throw ansatz_overflow_error(msg.str());
    }

    CDiffOp dh(E.space().n(), 1, k);
    for (int mu = 0; mu < E.space().n(); ++mu)
        dh.add_term(mu, 0, MultiIndex().plus(static_cast<std::size_t>(mu)),
                    IDForm::from_expr(Expr(1), k));

    KernelBasis kb = solve_kernel(dh, forms, E);
    E1Cell c;
    c.q = 0;
    c.kind = "vanishing";
    c.certified = true;
    c.rows = kb.n_rows;
    c.cols = kb.n_cols;
    c.rank = kb.rank;
    c.dim = static_cast<long>(kb.dim());
    for (const auto& tuple : kb.elements) c.basis.push_back(tuple[0].to_string(E.space()));
    c.note = "kernel of the horizontal differential on bounded Cartan forms; "
             "dimension 0 is consistent with vanishing below the two lines";
    return c;
}

E1Cell kernel_cell(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    KernelBasis kb = lifted_cosymmetries(E, k, p, A);
    E1Cell c;
    c.q = E.space().n() - 1;
    c.kind = "kernel";
    c.certified = true;
    c.rows = kb.n_rows;
    c.cols = kb.n_cols;
    c.rank = kb.rank;
    c.dim = static_cast<long>(kb.dim());
    for (const auto& tuple : kb.elements)
        c.basis.push_back(alt_representative(tuple, kb.blocks, k).to_string(E.space()));
    c.note = "kernel of the lifted adjoint, realized through the alternation map; "
             "exact within the ansatz bounds and re-verified";
    return c;
}

E1Cell cokernel_cell(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    const CDiffOp base = restrict_operator(adjoint(lift_linearize(E, k), E.space()), E);
    const CDiffOp op = extend_p(base, p - 1, k);
    const BlockAnsatz domain = block_ansatz(E, k, p, A);
    const std::vector<ColumnTerms> columns = determining_columns(op, domain, E, true);

    /* Enumerate the target at the bounds the image actually reaches, so the
     * quotient is computed in a space that provably contains the image. */
    AnsatzSpace wide = A;
    int base_deg = A.with_xt ? A.xt_degree : 0;
    for (const ColumnTerms& col : columns)
        for (const auto& [key, value] : col) {
            (void)value;
            wide.max_degree = std::max(wide.max_degree, key.mono.jet_degree());
            wide.max_order = std::max(wide.max_order, key.mono.max_jet_order());
            base_deg = std::max(base_deg, key.mono.base_degree());
            for (const IDGen& g : key.word.gens)
                wide.max_order = std::max(wide.max_order, g.coord.jet_order());
        }
    wide.with_xt = base_deg > 0;
    wide.xt_degree = base_deg;
    wide.cap = A.cap * 64; /* targets are larger than domains by design */
    const BlockAnsatz target = block_ansatz(E, k, p, wide);

    /* Every enumerated target element is a single word-times-monomial term,
     * i.e. one coordinate of the image space. */
    std::map<RowKey, int> index;
    std::vector<std::pair<std::size_t, const IDForm*>> coords;
    for (std::size_t b = 0; b < target.basis.size(); ++b)
        for (const IDForm& w : target.basis[b]) {
            const auto& [word, coeff] = *w.terms().begin();
            index[{static_cast<int>(b), word, coeff.num().leading_monomial()}] =
                static_cast<int>(coords.size());
            coords.push_back({b, &w});
        }

    std::vector<SparseRow> mat(coords.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [key, value] : columns[j]) {
            auto it = index.find(key);
            if (it == index.end())
                throw error("cokernel target enumeration missed an image coordinate");
            mat[static_cast<std::size_t>(it->second)].push_back(
                {static_cast<int>(j), value});
        }

    const std::vector<int> pivots = column_space_pivots(mat, static_cast<int>(coords.size()));

    E1Cell c;
    c.q = E.space().n();
    c.kind = "cokernel";
    c.certified = false;
    c.rows = coords.size();
    c.cols = columns.size();
    c.rank = pivots.size();
    c.dim = static_cast<long>(coords.size()) - static_cast<long>(pivots.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (next < pivots.size() && pivots[next] == static_cast<int>(i)) {
            ++next;
            continue;
        }
        std::vector<IDForm> tuple(target.blocks.size(), IDForm(target.slots));
        tuple[coords[i].first] = *coords[i].second;
        c.basis.push_back(alt_representative(tuple, target.blocks, k).to_string(E.space()));
    }
    c.note = "truncated quotient of the enumerated target by the image; representatives "
             "are coordinates missed by the image and the dimension is not stable "
             "under enlarging the bounds";
    return c;
}

}  // namespace

E1Cell zero_column_note(const EquationSystem& E, int k) {
    (void)E;
    if (k < 1) throw shape_error("zero_column_note: need k >= 1");
    E1Cell c;
    c.q = -1;
    c.kind = "note";
    if (k >= 2) {
        std::ostringstream msg;
        msg << "the p = 0 column restates the whole report one level down; re-run at k = "
            << (k - 1);
        c.note = msg.str();
    } else {
        c.note = "the p = 0 column is horizontal cohomology, outside the scope of this tool";
    }
    return c;
}

E1Report two_lines_report(const EquationSystem& E, int k, int p, const AnsatzSpace& A) {
    if (k < 1 || p < 1) throw shape_error("two_lines_report: need k >= 1 and p >= 1");
    E1Report r;
    r.system = E.name();
    r.k = k;
    r.p = p;
    r.n = E.space().n();
    r.config = A;

    r.cells.push_back(zero_column_note(E, k));
    if (r.n >= 2) r.cells.push_back(vanishing_cell(E, k, p, A));
    for (int q = 1; q <= r.n - 2; ++q) {
        E1Cell c;
        c.q = q;
        c.kind = "note";
        c.note = "middle row below the two lines: the ker/im quotient is not computed "
                 "at bounded order, so no evidence is offered here";
        r.cells.push_back(c);
    }
    r.cells.push_back(kernel_cell(E, k, p, A));
    r.cells.push_back(cokernel_cell(E, k, p, A));
    return r;
}

nlohmann::ordered_json report_json(const E1Report& r) {
    nlohmann::ordered_json j;
    j["system"] = r.system;
    j["k"] = r.k;
    j["p"] = r.p;
    j["cells"] = nlohmann::ordered_json::array();
    for (const E1Cell& c : r.cells) {
        nlohmann::ordered_json cell;
        cell["q"] = c.q;
        cell["kind"] = c.kind;
        cell["basis"] = c.basis;
        cell["dims"] = {{"rows", c.rows}, {"cols", c.cols}, {"rank", c.rank}, {"dim", c.dim}};
        cell["certified"] = c.certified;
        cell["note"] = c.note;
        j["cells"].push_back(cell);
    }
    j["config"] = {{"max_order", r.config.max_order},
                   {"max_degree", r.config.max_degree},
                   {"with_xt", r.config.with_xt},
                   {"xt_degree", r.config.xt_degree},
                   {"cartan_degree", r.config.cartan_degree},
                   {"cap", r.config.cap}};
    return j;
}

std::string to_json_string(const E1Report& r) { return report_json(r).dump(2) + "\n"; }

}  // namespace diffiety
