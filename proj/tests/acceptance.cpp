/* Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
 * fails.  Budgets are wall-clock seconds; 0 means no budget.  Run it from
 * anywhere — corpus files are compiled in through DIFFIETY_CORPUS_DIR. */
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffiety/cli.hpp"
#include "diffiety/corpus.hpp"
#include "diffiety/parser.hpp"
#include "diffiety/pullback.hpp"
#include "diffiety/random_gen.hpp"
#include "diffiety/report.hpp"
#include "diffiety/solver.hpp"

using namespace diffiety;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::string corpus_path(const std::string& name) {
    return std::string(DIFFIETY_CORPUS_DIR) + "/" + name + ".eq";
}

AnsatzSpace bounds(int order, int degree, bool xt = false, int cartan = 0) {
    AnsatzSpace a;
    a.max_order = order;
    a.max_degree = degree;
    a.with_xt = xt;
    a.cartan_degree = cartan;
    return a;
}

Expr parse_in(const EquationSystem& E, const std::string& text) {
    return parse_expression(text, E.space());
}

/* Random iterated form: 1-2 terms with at most max_gens generators in total,
 * each generator over a non-empty slot set, polynomial coefficients. */
IDForm random_form(Rng& rng, const JetSpace& space, int slots, int max_gens, int max_degree) {
    IDForm w(slots);
    int terms = rng.range(1, 2);
    int budget = max_gens;
    for (int t = 0; t < terms; ++t) {
        std::vector<IDGen> gens;
        int count = rng.range(0, budget);
        budget -= count;
        for (int g = 0; g < count; ++g) {
            IDGen gen;
            gen.K = (SlotSet)rng.range(1, (1 << slots) - 1);
            gen.coord = rng.chance(1, 4) ? JetCoord::independent(rng.range(0, space.n() - 1))
                                         : random_jet_coord(rng, space, 2);
            gens.push_back(gen);
        }
        w += IDForm::term(slots, gens, random_poly_expr(rng, space, 2, max_degree, 2, true));
    }
    return w;
}

CDiffOp random_scalar_op(Rng& rng, const JetSpace& space, int max_order) {
    CDiffOp a(1, 1, 0);
    auto sigmas = multiindices_up_to(space.n(), max_order);
    int terms = rng.range(1, 3);
    for (int i = 0; i < terms; ++i) {
        const MultiIndex& s = sigmas[(std::size_t)rng.range(0, (int)sigmas.size() - 1)];
        a.add_term(0, 0, s, IDForm::from_expr(random_poly_expr(rng, space, 2, 2, 2, true), 0));
    }
    return a;
}

const E1Cell& cell_at(const E1Report& r, int q) {
    for (const E1Cell& c : r.cells)
        if (c.q == q) return c;
    throw std::runtime_error("report has no cell at q = " + std::to_string(q));
}

/* ---- criteria ---- */

std::string algebra_axioms() {
    JetSpace space{{"x", "t"}, {"u"}};
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        int slots = rng.range(1, 3);
        IDForm w = random_form(rng, space, slots, 4, 3);
        for (int s = 1; s <= slots; ++s) {
            IDForm dh = d_horizontal(w, s, space);
            IDForm dv = d_vertical(w, s);
            IDForm ds = d_slot(w, s, space);
            require(ds == dh + dv, "d_i != d_i^h + d_i^v");
            require(d_slot(ds, s, space).is_zero(), "d_i^2 != 0");
            require(d_horizontal(dh, s, space).is_zero(), "(d_i^h)^2 != 0");
            require(d_vertical(dv, s).is_zero(), "(d_i^v)^2 != 0");
            require(d_horizontal(dv, s, space) == -d_vertical(dh, s),
                    "split parts do not anticommute");
        }
        if (slots >= 2) {
            int a = rng.range(1, slots - 1), b = rng.range(a + 1, slots);
            require(d_slot(d_slot(w, a, space), b, space) ==
                        d_slot(d_slot(w, b, space), a, space),
                    "d_i d_j != d_j d_i");
        }
        IDForm u = random_form(rng, space, slots, 2, 2);
        IDForm v = random_form(rng, space, slots, 2, 2);
        require((w * u) * v == w * (u * v), "product not associative");
        if (w.terms().size() == 1 && u.terms().size() == 1) {
            int dot = 0;
            for (int s = 1; s <= slots; ++s)
                dot += w.terms().begin()->first.degree_in_slot(s) *
                       u.terms().begin()->first.degree_in_slot(s);
            IDForm uw = u * w;
            if (dot % 2 == 1) uw = -uw;
            require(w * u == uw, "graded commutativity failed");
        }
    }
    return "1000 instances, slots <= 3, <= 4 generators, degree <= 3";
}

std::string pullback_morphism() {
    JetSpace src{{"x", "t"}, {"u"}};
    JetSpace tgt{{"x", "t"}, {"v"}};
    BundleMap F(src, tgt, {parse_expression("u_t - u_{xx}", src)});
    Rng rng(202);
    for (int i = 0; i < 200; ++i) {
        IDForm a = random_form(rng, tgt, 2, 2, 2);
        IDForm b = random_form(rng, tgt, 2, 2, 2);
        require(pullback_form(F, a * b) == pullback_form(F, a) * pullback_form(F, b),
                "pullback is not multiplicative");
        for (int s = 1; s <= 2; ++s)
            require(pullback_form(F, d_slot(a, s, tgt)) ==
                        d_slot(pullback_form(F, a), s, src),
                    "pullback does not commute with d_i");
    }
    return "200 random forms over the rank-1 heat-operator map";
}

std::string adjoint_correctness() {
    for (const CorpusEntry& e : load_corpus()) {
        EquationSystem E = e.parse();
        require(green_check(linearize(E), E.space()), "green identity fails for " + e.name);
    }
    JetSpace space{{"x", "t"}, {"u"}};
    Rng rng(303);
    for (int i = 0; i < 100; ++i) {
        CDiffOp a = random_scalar_op(rng, space, 3);
        require(green_check(a, space), "green identity fails on a random operator");
        require(adjoint(adjoint(a, space), space) == a, "adjoint is not an involution");
        CDiffOp b = random_scalar_op(rng, space, 3);
        require(adjoint(compose(a, b, space), space) ==
                    compose(adjoint(b, space), adjoint(a, space), space),
                "adjoint is not an anti-homomorphism");
    }
    return "corpus linearizations + 100 random operators of order <= 3";
}

std::string classical_kernels() {
    auto timed = [](const std::string& label, const std::function<KernelBasis()>& solve) {
        auto t0 = std::chrono::steady_clock::now();
        KernelBasis kb = solve();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(secs < 120, label + " took " + std::to_string(secs) + " s (budget 120)");
        return kb;
    };

    EquationSystem kdv = corpus_entry("kdv").parse();
    KernelBasis kc = timed("kdv cosymmetries", [&] { return cosymmetries(kdv, bounds(2, 2)); });
    require(kc.dim() == 3, "kdv cosymmetry dimension is not 3");
    require(spans_equal(kc.sections(), {{parse_in(kdv, "1")},
                                        {parse_in(kdv, "u")},
                                        {parse_in(kdv, "3*u^2 + u_{xx}")}}),
            "kdv cosymmetries differ from span{1, u, 3u^2+u_xx}");

    EquationSystem burgers = corpus_entry("burgers").parse();
    KernelBasis bc =
        timed("burgers cosymmetries", [&] { return cosymmetries(burgers, bounds(2, 2)); });
    require(bc.dim() == 1, "burgers cosymmetry dimension is not 1");
    require(spans_equal(bc.sections(), {{parse_in(burgers, "1")}}),
            "burgers cosymmetries differ from span{1}");

    EquationSystem heat = corpus_entry("heat").parse();
    KernelBasis hs =
        timed("heat symmetries", [&] { return symmetries(heat, bounds(1, 1, true)); });
    for (const char* text : {"u", "u_x", "2*t*u_x + x*u"})
        require(in_span(hs.sections(), {parse_in(heat, text)}),
                std::string("heat symmetries miss ") + text);
    return "kdv span{1, u, 3u^2+u_xx}; burgers span{1}; heat contains the Galilei boost";
}

std::string degeneration() {
    for (const CorpusEntry& e : load_corpus()) {
        EquationSystem E = e.parse();
        CDiffOp lifted = lift_linearize(E, 1);
        CDiffOp plain = linearize(E);
        require(lifted == plain, "lift_linearize(E, 1) != linearize(E) for " + e.name);
        require(lifted.to_string(E.space()) == plain.to_string(E.space()),
                "printed forms differ for " + e.name);

        KernelBasis a = lifted_cosymmetries(E, 1, 1, bounds(2, 2));
        KernelBasis b = cosymmetries(E, bounds(2, 2));
        require(a.elements.size() == b.elements.size(),
                "kernel dimensions differ at k = 1 for " + e.name);
        for (std::size_t i = 0; i < a.elements.size(); ++i)
            for (std::size_t c = 0; c < a.elements[i].size(); ++c)
                require(a.elements[i][c].scalar_part().to_string(E.space()) ==
                            b.elements[i][c].scalar_part().to_string(E.space()),
                        "kernel elements print differently at k = 1 for " + e.name);
    }
    return "operators and kernels coincide at k = 1 on all five corpus systems";
}

std::string iterated_consistency() {
    EquationSystem heat = corpus_entry("heat").parse();
    CDiffOp L = lift_linearize(heat, 2);
    CDiffOp l = linearize(heat);
    require(L.entries().count({0, 1}) == 0 && L.entries().count({1, 0}) == 0,
            "heat lift has a nonzero off-diagonal block");
    for (int d = 0; d < 2; ++d) {
        std::string got = entry_to_string(L.entry(d, d), heat.space());
        require(got == l.to_string(heat.space()),
                "heat lift diagonal block is " + got);
    }

    EquationSystem kdv = corpus_entry("kdv").parse();
    CDiffOp K = lift_linearize(kdv, 2);
    std::string off = entry_to_string(K.entry(1, 0), kdv.space());
    require(off == "-6*dv[1]u_x - 6*dv[1]u*Dx", "kdv off-diagonal block is " + off);

    /* slot-degree-1 runs: constants lift untouched, u picks up its vertical
     * differential in the lower slot */
    KernelBasis hl = lifted_cosymmetries(heat, 2, 1, bounds(1, 1, false, 1));
    require(hl.dim() == 1, "heat lifted kernel dimension is not 1");
    require(hl.elements[0][0].is_zero() &&
                hl.elements[0][1] == IDForm::from_expr(Expr(1), 1),
            "heat lifted kernel is not the lift of 1");

    KernelBasis kl = lifted_cosymmetries(kdv, 2, 1, bounds(1, 1, false, 1));
    require(kl.dim() == 2, "kdv lifted kernel dimension is not 2");
    IDForm u_form = IDForm::from_expr(Expr::coordinate(JetCoord::jet(0)), 1);
    bool has_const = false, has_u = false;
    for (const auto& el : kl.elements) {
        if (el[0].is_zero() && el[1] == IDForm::from_expr(Expr(1), 1)) has_const = true;
        if (el[0] == d_vertical(u_form, 1) && el[1] == u_form) has_u = true;
    }
    require(has_const && has_u, "kdv lifted kernel misses a block-structure lift");
    return "block structure at k = 2 and the predicted lifted kernels";
}

std::string vanishing_evidence() {
    std::ostringstream detail;
    for (const char* name : {"heat", "burgers"}) {
        EquationSystem E = corpus_entry(name).parse();
        for (int k : {1, 2}) {
            E1Report r = two_lines_report(E, k, 1, bounds(2, 2, false, k == 2 ? 1 : 0));
            const E1Cell& c = cell_at(r, 0);
            require(c.dim == 0, std::string(name) + " has a nonzero q = 0 cell at k = " +
                                    std::to_string(k));
            detail << (detail.tellp() > 0 ? "; " : "") << name << " k=" << k << ": "
                   << c.rows << "x" << c.cols << " rank " << c.rank;
        }
    }
    return detail.str();
}

std::string extension_functoriality() {
    JetSpace space{{"x", "t"}, {"u"}};
    require(extend_p(CDiffOp::identity(1, 0), 1, 2) == CDiffOp::identity(1, 2),
            "identity does not extend to the identity");
    Rng rng(808);
    for (int i = 0; i < 100; ++i) {
        CDiffOp a = random_scalar_op(rng, space, 2);
        CDiffOp b = random_scalar_op(rng, space, 2);
        require(extend_p(compose(a, b, space), 1, 2) ==
                    compose(extend_p(a, 1, 2), extend_p(b, 1, 2), space),
                "extension does not commute with composition");
    }
    return "identity preserved; composition preserved on 100 random pairs";
}

std::string symmetry_closure() {
    EquationSystem kdv = corpus_entry("kdv").parse();
    KernelBasis s = symmetries(kdv, bounds(3, 2));
    require(s.dim() == 2, "kdv symmetry dimension is not 2");
    std::vector<Section> basis = s.sections();
    for (const Section& a : basis)
        for (const Section& b : basis)
            require(in_span(basis, lie_bracket(a, b, kdv)),
                    "bracket of basis elements leaves the span");

    Rng rng(909);
    for (int i = 0; i < 10; ++i) {
        Section a = {random_poly_expr(rng, kdv.space(), 2, 2, 2, false)};
        Section b = {random_poly_expr(rng, kdv.space(), 2, 2, 2, false)};
        Section c = {random_poly_expr(rng, kdv.space(), 2, 2, 2, false)};
        Section ab = lie_bracket(a, b, kdv);
        Section ba = lie_bracket(b, a, kdv);
        for (std::size_t j = 0; j < ab.size(); ++j)
            require(ab[j] == -ba[j], "bracket is not antisymmetric");
        Section jac = lie_bracket(lie_bracket(a, b, kdv), c, kdv);
        Section j2 = lie_bracket(lie_bracket(b, c, kdv), a, kdv);
        Section j3 = lie_bracket(lie_bracket(c, a, kdv), b, kdv);
        for (std::size_t j = 0; j < jac.size(); ++j)
            require((jac[j] + j2[j] + j3[j]).is_zero(), "Jacobi identity failed");
    }
    return "basis brackets close; antisymmetry and Jacobi on 10 random triples";
}

std::string e1_determinism() {
    std::vector<std::string> args = {"e1", corpus_path("kdv"), "--order", "2", "--degree",
                                     "2"};
    std::ostringstream out1, err1, out2, err2;
    require(run_cli(args, out1, err1) == 0, "first e1 run failed");
    require(run_cli(args, out2, err2) == 0, "second e1 run failed");
    require(!out1.str().empty(), "e1 produced no output");
    require(out1.str() == out2.str(), "e1 output differs between runs");
    return std::to_string(out1.str().size()) + " bytes, identical across runs";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "iterated-form algebra axioms", 60, algebra_axioms},
        {2, "pullback is a differential-algebra morphism", 0, pullback_morphism},
        {3, "adjoint correctness (Green identity)", 0, adjoint_correctness},
        {4, "classical kernels at k = 1", 0, classical_kernels},
        {5, "degeneration of the lift at k = 1", 0, degeneration},
        {6, "iterated consistency at k = 2", 0, iterated_consistency},
        {7, "vanishing evidence below the two lines", 0, vanishing_evidence},
        {8, "extension functoriality", 0, extension_functoriality},
        {9, "symmetry algebra closure", 0, symmetry_closure},
        {10, "e1 determinism", 0, e1_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.body();
        } catch (const std::exception& ex) {
            ok = false;
            detail = ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (ok && c.budget_s > 0 && secs > c.budget_s) {
            ok = false;
            detail = "over budget (" + std::to_string(c.budget_s) + " s)";
        }
        std::printf("%s %2d  %-46s %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    detail.c_str(), secs);
        if (!ok) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", (int)criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
