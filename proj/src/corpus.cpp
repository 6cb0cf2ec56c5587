#include "diffiety/corpus.hpp"

#include <sstream>

#include "diffiety/parser.hpp"

namespace diffiety {

namespace {

AnsatzSpace bounds(int order, int degree, bool xt = false) {
    AnsatzSpace a;
    a.max_order = order;
    a.max_degree = degree;
    a.with_xt = xt;
    return a;
}

GoldenBasis golden(std::string kind, AnsatzSpace a, long dim, bool exact,
                   std::vector<std::vector<std::string>> elements) {
    GoldenBasis g;
    g.kind = std::move(kind);
    g.bounds = a;
    g.expected_dim = dim;
    g.exact = exact;
    g.elements = std::move(elements);
    return g;
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> out;

    {
        CorpusEntry e;
        e.name = "heat";
        e.text =
            "# Linear heat flow.\n"
            "[system]\n"
            "name = heat\n"
            "independent = x, t\n"
            "dependent = u\n"
            "\n"
            "[equations]\n"
            "u_t = u_{xx}\n";
        e.notes =
            "Scaling, translation and the Galilei boost 2*t*u_x + x*u are the "
            "textbook point symmetries visible at first order; only the trivial "
            "conservation law survives without x,t factors.";
        e.goldens.push_back(golden("symmetries", bounds(1, 1, true), 5, false,
                                   {{"u"}, {"u_x"}, {"2*t*u_x + x*u"}}));
        e.goldens.push_back(golden("cosymmetries", bounds(2, 2), 1, true, {{"1"}}));
        out.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.name = "burgers";
        e.text =
            "# Viscous Burgers equation.\n"
            "[system]\n"
            "name = burgers\n"
            "independent = x, t\n"
            "dependent = u\n"
            "\n"
            "[equations]\n"
            "u_t = u*u_x + u_{xx}\n";
        e.notes =
            "Dissipation kills every non-trivial conservation law: the adjoint "
            "kernel at these bounds is spanned by the constant.";
        e.goldens.push_back(golden("cosymmetries", bounds(2, 2), 1, true, {{"1"}}));
        out.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.name = "kdv";
        e.text =
            "# Korteweg-de Vries equation in the 6*u*u_x normalization.\n"
            "[system]\n"
            "name = kdv\n"
            "independent = x, t\n"
            "dependent = u\n"
            "\n"
            "[equations]\n"
            "u_t = 6*u*u_x + u_{xxx}\n";
        e.notes =
            "Mass, momentum and energy generators 1, u, 3*u^2 + u_{xx}; the "
            "x- and t-translation flows u_x and 6*u*u_x + u_{xxx} close under "
            "the bracket.  Each element hand-checked against the restricted "
            "(adjoint) linearization.";
        e.goldens.push_back(golden("cosymmetries", bounds(2, 2), 3, true,
                                   {{"1"}, {"u"}, {"3*u^2 + u_{xx}"}}));
        e.goldens.push_back(golden("symmetries", bounds(3, 2), 2, true,
                                   {{"u_x"}, {"6*u*u_x + u_{xxx}"}}));
        out.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.name = "transport";
        e.text =
            "# Linear transport; restriction identifies D_t with D_x.\n"
            "[system]\n"
            "name = transport\n"
            "independent = x, t\n"
            "dependent = u\n"
            "\n"
            "[equations]\n"
            "u_t = u_x\n";
        e.notes =
            "Degenerate reference point: the restricted linearization vanishes "
            "on x,t-free candidates, so the kernel is the whole ansatz.  The "
            "golden pins that dimension (10 = monomials of degree <= 2 in the "
            "five coordinates of order <= 2) rather than a basis.";
        e.goldens.push_back(golden("symmetries", bounds(2, 2), 10, false, {}));
        e.goldens.push_back(golden("cosymmetries", bounds(2, 2), 10, false, {}));
        out.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.name = "wave2";
        e.text =
            "# Wave equation written as a first-order evolution system.\n"
            "[system]\n"
            "name = wave2\n"
            "independent = x, t\n"
            "dependent = u, v\n"
            "\n"
            "[equations]\n"
            "u_t = v\n"
            "v_t = u_{xx}\n";
        e.notes =
            "Symmetries pair the two components: scaling (u, v), translations "
            "(u_x, v_x) and (v, u_{xx}), shifts (1, 0), and the D_x-hierarchy "
            "member (u_{xx}, v_{xx}).  Cosymmetries include momentum (v, -u) "
            "and energy (2*u_x*v_x + 2*u_{xx}*v, -v^2 - u_x^2) alongside their "
            "x-derivative shifts.";
        e.goldens.push_back(golden(
            "symmetries", bounds(2, 1), 5, true,
            {{"1", "0"}, {"u", "v"}, {"u_x", "v_x"}, {"v", "u_{xx}"}, {"u_{xx}", "v_{xx}"}}));
        e.goldens.push_back(golden(
            "cosymmetries", bounds(2, 2), 7, true,
            {{"0", "1"},
             {"v", "-u"},
             {"v_x", "-u_x"},
             {"v_{xx}", "-u_{xx}"},
             {"u_{xx}", "-v"},
             {"v*v_x + u_x*u_{xx}", "-u_x*v"},
             {"2*u_x*v_x + 2*u_{xx}*v", "-v^2 - u_x^2"}}));
        out.push_back(std::move(e));
    }

    return out;
}

}  // namespace

EquationSystem CorpusEntry::parse() const { return parse_system(text); }

const std::vector<CorpusEntry>& load_corpus() {
    static const std::vector<CorpusEntry> corpus = build_corpus();
    return corpus;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const CorpusEntry& e : load_corpus())
        if (e.name == name) return e;
    throw error("unknown corpus system: " + name);
}

void verify_goldens(const CorpusEntry& entry) {
    EquationSystem E = entry.parse();
    if (!E.normal_form().ok) throw error(entry.name + ": not in evolution normal form");

    for (const GoldenBasis& g : entry.goldens) {
        const bool sym = g.kind == "symmetries";
        if (!sym && g.kind != "cosymmetries")
            throw error(entry.name + ": unknown golden kind " + g.kind);
        const CDiffOp op = sym ? restrict_operator(linearize(E), E)
                               : restrict_operator(adjoint(linearize(E), E.space()), E);

        std::vector<Section> listed;
        for (const auto& comps : g.elements) {
            Section s;
            for (const std::string& text : comps) s.push_back(parse_expression(text, E.space()));
            for (const Expr& r : apply_internal(op, s, E))
                if (!r.is_zero())
                    throw error(entry.name + ": golden " + g.kind +
                                " element fails re-verification");
            listed.push_back(std::move(s));
        }

        KernelBasis kb = sym ? symmetries(E, g.bounds) : cosymmetries(E, g.bounds);
        if (g.expected_dim >= 0 && static_cast<long>(kb.dim()) != g.expected_dim) {
            std::ostringstream msg;
            msg << entry.name << ": " << g.kind << " dimension " << kb.dim() << ", golden pins "
                << g.expected_dim;
            throw error(msg.str());
        }
        const std::vector<Section> computed = kb.sections();
        for (const Section& s : listed)
            if (!in_span(computed, s))
                throw error(entry.name + ": golden " + g.kind + " element not in solved kernel");
        if (g.exact && !spans_equal(computed, listed))
            throw error(entry.name + ": golden " + g.kind + " span differs from solved kernel");
    }
}

}  // namespace diffiety
