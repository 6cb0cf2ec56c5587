#include "diffiety/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diffiety/corpus.hpp"
#include "diffiety/parser.hpp"
#include "diffiety/random_gen.hpp"
#include "diffiety/report.hpp"

namespace diffiety {

namespace {

using nlohmann::ordered_json;

/* Bad input that the user can fix on the command line (exit 2), as opposed
 * to a computation that legitimately failed (exit 1). */
struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::string format; /* resolved per command when empty */
    std::string out_path;
    int k = 1;
    int p = 1;
    int q = -2; /* -2: every row */
    int order = 1;
    int degree = 1;
    int cartan = 0;
    bool xt = false;
    bool timing = false;
    unsigned seed = 1;
};

bool log_enabled() {
    const char* v = std::getenv("DIFFIETY_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

AnsatzSpace cfg_bounds(const RunConfig& cfg) {
    AnsatzSpace a;
    a.max_order = cfg.order;
    a.max_degree = cfg.degree;
    a.with_xt = cfg.xt;
    a.cartan_degree = cfg.cartan;
    return a;
}

std::string load_text(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw usage_failure("cannot open input file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f.good()) throw usage_failure("cannot open output file: " + cfg.out_path);
    f << payload;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json operator_json(const EquationSystem& E, const CDiffOp& op) {
    ordered_json j;
    j["system"] = E.name();
    j["rows"] = op.rows();
    j["cols"] = op.cols();
    j["slots"] = op.slots();
    j["entries"] = ordered_json::array();
    for (const auto& [pos, entry] : op.entries()) {
        ordered_json e;
        e["row"] = pos.first;
        e["col"] = pos.second;
        e["text"] = entry_to_string(entry, E.space());
        j["entries"].push_back(e);
    }
    return j;
}

ordered_json bounds_json(const AnsatzSpace& a) {
    return {{"max_order", a.max_order},
            {"max_degree", a.max_degree},
            {"with_xt", a.with_xt},
            {"xt_degree", a.xt_degree},
            {"cartan_degree", a.cartan_degree},
            {"cap", a.cap}};
}

std::string block_label(const JetSpace& space, const std::pair<int, SlotSet>& b) {
    return space.dependents[static_cast<std::size_t>(b.first)] + "[" +
           slots_to_string(b.second) + "]";
}

int cmd_check(const RunConfig& cfg, const EquationSystem& E, std::ostream& out) {
    NormalFormReport nf = E.normal_form();
    if (cfg.format == "json") {
        ordered_json j;
        j["system"] = E.name();
        j["ok"] = nf.ok;
        j["issues"] = nf.issues;
        emit(cfg, dump(j), out);
    } else {
        std::string text = "system " + E.name() + ": " +
                           (nf.ok ? "evolution normal form ok" : "not in evolution form") + "\n";
        for (const std::string& i : nf.issues) text += "  " + i + "\n";
        emit(cfg, text, out);
    }
    return nf.ok ? 0 : 1;
}

int cmd_operator(const RunConfig& cfg, const EquationSystem& E, bool adjoint_of, std::ostream& out) {
    CDiffOp op = linearize(E);
    if (adjoint_of) op = adjoint(op, E.space());
    if (cfg.format == "json")
        emit(cfg, dump(operator_json(E, op)), out);
    else
        emit(cfg, op.to_string(E.space()) + "\n", out);
    return 0;
}

int cmd_kernel(const RunConfig& cfg, const EquationSystem& E, bool sym, std::ostream& out,
               std::ostream& err) {
    const AnsatzSpace bounds = cfg_bounds(cfg);
    if (sym && (cfg.k != 1 || cfg.p != 1))
        throw usage_failure("symmetries takes no --k/--p; lifted runs go through cosymmetries/e1");

    KernelBasis kb;
    bool lifted = !sym && (cfg.k != 1 || cfg.p != 1);
    if (sym)
        kb = symmetries(E, bounds);
    else if (!lifted)
        kb = cosymmetries(E, bounds);
    else
        kb = lifted_cosymmetries(E, cfg.k, cfg.p, bounds);
    if (log_enabled())
        err << "[log] determining system: " << kb.n_rows << " rows, " << kb.n_cols
            << " cols, rank " << kb.rank << "\n";

    std::vector<std::vector<std::string>> basis;
    for (const auto& tuple : kb.elements) {
        std::vector<std::string> comps;
        for (const IDForm& w : tuple)
            comps.push_back(lifted ? w.to_string(E.space())
                                   : w.scalar_part().to_string(E.space()));
        basis.push_back(std::move(comps));
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["system"] = E.name();
        j["kind"] = sym ? "symmetries" : "cosymmetries";
        j["k"] = cfg.k;
        j["p"] = cfg.p;
        j["config"] = bounds_json(bounds);
        j["dims"] = {{"rows", kb.n_rows}, {"cols", kb.n_cols}, {"rank", kb.rank},
                     {"dim", kb.dim()}};
        if (lifted) {
            j["blocks"] = ordered_json::array();
            for (const auto& b : kb.blocks) j["blocks"].push_back(block_label(E.space(), b));
        }
        j["basis"] = basis;
        emit(cfg, dump(j), out);
    } else {
        std::ostringstream text;
        text << (sym ? "symmetries" : "cosymmetries") << " of " << E.name() << ": dim "
             << kb.dim() << " (rows " << kb.n_rows << ", cols " << kb.n_cols << ", rank "
             << kb.rank << ")\n";
        for (const auto& comps : basis) {
            if (comps.size() == 1) {
                text << "  " << comps[0] << "\n";
            } else {
                text << "  (";
                for (std::size_t i = 0; i < comps.size(); ++i)
                    text << (i ? "; " : "") << comps[i];
                text << ")\n";
            }
        }
        emit(cfg, text.str(), out);
    }
    return 0;
}

int cmd_lift(const RunConfig& cfg, const EquationSystem& E, std::ostream& out) {
    const CDiffOp L = lift_linearize(E, cfg.k);
    const auto blocks = lifted_blocks(E.space().m(), cfg.k);

    /* lifted equation: vertical differentials of F^a = u^a_t - f^a */
    std::vector<std::string> equations;
    const int slots = cfg.k - 1;
    MultiIndex dt = MultiIndex().plus(static_cast<std::size_t>(E.leading()));
    for (const auto& [a, K] : blocks) {
        JetCoord ut{a, 0, dt};
        Expr F = Expr::coordinate(ut) - E.rhs(a);
        IDForm lifted = d_K_vertical(IDForm::from_expr(F, slots), K);
        equations.push_back(lifted.is_scalar() ? lifted.scalar_part().to_string(E.space())
                                               : lifted.to_string(E.space()));
    }

    if (cfg.format == "json") {
        ordered_json j = operator_json(E, L);
        j["k"] = cfg.k;
        j["blocks"] = ordered_json::array();
        for (const auto& b : blocks) j["blocks"].push_back(block_label(E.space(), b));
        j["equations"] = equations;
        emit(cfg, dump(j), out);
    } else {
        std::ostringstream text;
        text << "level " << cfg.k << " lift of " << E.name() << "\nblocks:";
        for (const auto& b : blocks) text << " " << block_label(E.space(), b);
        text << "\n";
        for (std::size_t i = 0; i < blocks.size(); ++i)
            text << "F[" << block_label(E.space(), blocks[i]) << "] = " << equations[i] << "\n";
        for (const auto& [pos, entry] : L.entries())
            text << "entry (" << block_label(E.space(), blocks[(std::size_t)pos.first]) << ", "
                 << block_label(E.space(), blocks[(std::size_t)pos.second])
                 << "): " << entry_to_string(entry, E.space()) << "\n";
        emit(cfg, text.str(), out);
    }
    return 0;
}

int cmd_e1(const RunConfig& cfg, const EquationSystem& E, std::ostream& out) {
    E1Report r = two_lines_report(E, cfg.k, cfg.p, cfg_bounds(cfg));
    if (cfg.q != -2) {
        std::vector<E1Cell> kept;
        for (const E1Cell& c : r.cells)
            if (c.q == cfg.q) kept.push_back(c);
        r.cells = std::move(kept);
    }
    if (cfg.format == "text") {
        std::ostringstream text;
        text << "first spectral term of " << E.name() << " at k = " << r.k << ", p = " << r.p
             << "\n";
        for (const E1Cell& c : r.cells) {
            text << "q = " << c.q << " [" << c.kind << (c.certified ? ", exact" : "") << "]";
            if (c.dim >= 0) text << " dim " << c.dim;
            text << "\n";
            for (const std::string& b : c.basis) text << "  " << b << "\n";
            if (!c.note.empty()) text << "  note: " << c.note << "\n";
        }
        emit(cfg, text.str(), out);
    } else {
        emit(cfg, to_json_string(r), out);
    }
    return 0;
}

int cmd_green(const RunConfig& cfg, const EquationSystem& E, std::ostream& out) {
    const CDiffOp l = linearize(E);
    const CDiffOp adj = adjoint(l, E.space());
    std::vector<std::pair<std::string, bool>> checks = {
        {"linearization", green_check(l, E.space())},
        {"adjoint", green_check(adj, E.space())},
        {"involution", adjoint(adj, E.space()) == l},
    };
    bool ok = true;
    for (const auto& [name, pass] : checks) ok = ok && pass;

    if (cfg.format == "json") {
        ordered_json j;
        j["system"] = E.name();
        j["checks"] = ordered_json::array();
        for (const auto& [name, pass] : checks)
            j["checks"].push_back({{"name", name}, {"ok", pass}});
        j["ok"] = ok;
        emit(cfg, dump(j), out);
    } else {
        std::ostringstream text;
        for (const auto& [name, pass] : checks)
            text << name << ": " << (pass ? "ok" : "FAILED") << "\n";
        emit(cfg, text.str(), out);
    }
    return ok ? 0 : 1;
}

/* Random 1x1 operator with polynomial coefficients (mirrors the test
 * helpers; kept local so the CLI stays self-contained). */
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

IDForm random_term_form(Rng& rng, const JetSpace& space, int slots, int max_gens) {
    std::vector<IDGen> gens;
    int n = rng.range(0, max_gens);
    for (int i = 0; i < n; ++i) {
        SlotSet K = 0;
        for (int s = 1; s <= slots; ++s)
            if (rng.chance(1, 2)) K |= slot_bit(s);
        if (K == 0) K = slot_bit(rng.range(1, slots));
        if (rng.chance(1, 4)) {
            gens.push_back({K, JetCoord::independent(rng.range(0, space.n() - 1))});
        } else {
            gens.push_back({K, random_jet_coord(rng, space, 2)});
        }
    }
    return IDForm::term(slots, gens, random_poly_expr(rng, space, 2, 2, 2, false));
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Rng rng(cfg.seed);
    EquationSystem kdv = corpus_entry("kdv").parse();
    const JetSpace& space = kdv.space();
    std::vector<std::pair<std::string, std::string>> failures;
    std::vector<std::pair<std::string, bool>> suites;

    auto run_suite = [&](const std::string& name, const std::function<void()>& body) {
        try {
            body();
            suites.push_back({name, true});
        } catch (const std::exception& ex) {
            suites.push_back({name, false});
            failures.push_back({name, ex.what()});
        }
    };

    run_suite("corpus goldens", [&] {
        for (const CorpusEntry& e : load_corpus()) verify_goldens(e);
    });

    run_suite("form algebra axioms", [&] {
        for (int i = 0; i < 30; ++i) {
            IDForm a = random_term_form(rng, space, 2, 2);
            IDForm b = random_term_form(rng, space, 2, 2);
            IDForm c = random_term_form(rng, space, 2, 2);
            if ((a * b) * c != a * (b * c)) throw error("associativity failed");
            if (a.terms().size() == 1 && b.terms().size() == 1) {
                int dot = 0;
                for (int s = 1; s <= 2; ++s)
                    dot += a.terms().begin()->first.degree_in_slot(s) *
                           b.terms().begin()->first.degree_in_slot(s);
                IDForm ba = b * a;
                if (dot % 2 == 1) ba = -ba;
                if (a * b != ba) throw error("graded commutativity failed");
            }
            for (int s = 1; s <= 2; ++s)
                if (!d_slot(d_slot(a, s, space), s, space).is_zero())
                    throw error("slot differential does not square to zero");
        }
    });

    run_suite("green identity on random operators", [&] {
        for (int i = 0; i < 20; ++i)
            if (!green_check(random_scalar_op(rng, space, 3), space))
                throw error("green identity failed");
    });

    run_suite("adjoint involution and anti-homomorphism", [&] {
        for (int i = 0; i < 15; ++i) {
            CDiffOp a = random_scalar_op(rng, space, 2);
            CDiffOp b = random_scalar_op(rng, space, 2);
            if (adjoint(adjoint(a, space), space) != a) throw error("involution failed");
            if (adjoint(compose(a, b, space), space) !=
                compose(adjoint(b, space), adjoint(a, space), space))
                throw error("anti-homomorphism failed");
        }
    });

    run_suite("extension functoriality", [&] {
        for (int i = 0; i < 10; ++i) {
            CDiffOp a = random_scalar_op(rng, space, 2);
            CDiffOp b = random_scalar_op(rng, space, 2);
            if (extend_p(compose(a, b, space), 1, 2) !=
                compose(extend_p(a, 1, 2), extend_p(b, 1, 2), space))
                throw error("extension does not commute with composition");
        }
    });

    bool ok = true;
    for (const auto& [name, pass] : suites) ok = ok && pass;

    if (cfg.format == "json") {
        ordered_json j;
        j["seed"] = cfg.seed;
        j["suites"] = ordered_json::array();
        for (const auto& [name, pass] : suites)
            j["suites"].push_back({{"name", name}, {"ok", pass}});
        j["ok"] = ok;
        emit(cfg, dump(j), out);
    } else {
        std::ostringstream text;
        text << "selftest (seed " << cfg.seed << ")\n";
        for (const auto& [name, pass] : suites)
            text << "  " << name << ": " << (pass ? "ok" : "FAILED") << "\n";
        emit(cfg, text.str(), out);
    }
    for (const auto& [name, what] : failures) err << name << ": " << what << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bounded-order jet calculus for evolution systems"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--k", cfg.k, "lift level (number of slots + 1)");
    app.add_option("--p", cfg.p, "Cartan column");
    app.add_option("--q", cfg.q, "restrict e1 output to one row");
    app.add_option("--order,-N", cfg.order, "ansatz jet order bound");
    app.add_option("--degree,-D", cfg.degree, "ansatz polynomial degree bound");
    app.add_option("--cartan", cfg.cartan, "lower-slot Cartan degree of the ansatz");
    app.add_flag("--xt", cfg.xt, "allow explicit x,t factors in candidates");
    app.add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
    app.add_option("--seed", cfg.seed, "seed for the randomized selftest suites");
    app.add_flag("--timing", cfg.timing, "print wall-clock timings to stderr");

    struct Sub {
        const char* name;
        const char* help;
        bool takes_file;
    };
    const Sub subs[] = {
        {"check", "parse a system file and verify evolution normal form", true},
        {"linearize", "print the linearization operator", true},
        {"adjoint", "print the formal adjoint of the linearization", true},
        {"symmetries", "solve for evolutionary symmetries within an ansatz", true},
        {"cosymmetries", "solve for cosymmetries (adjoint kernel) within an ansatz", true},
        {"lift", "print the lifted system and its linearization blocks", true},
        {"e1", "first-term spectral report (two-line survey)", true},
        {"green-check", "verify the Green identity for the linearization", true},
        {"selftest", "run the built-in verification suites", false},
    };
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->fallthrough();
        if (s.takes_file) sub->add_option("file", cfg.input, "system file")->required();
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (cfg.k < 1 || cfg.k > 8) {
        err << "usage error: --k must be between 1 and 8\n";
        return 2;
    }
    if (cfg.p < 1 || cfg.order < 1 || cfg.degree < 1 || cfg.cartan < 0) {
        err << "usage error: --p, --order and --degree must be >= 1; --cartan must be >= 0\n";
        return 2;
    }
    if (cfg.format.empty()) cfg.format = (cfg.command == "e1") ? "json" : "text";

    const auto started = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (cfg.command == "selftest") {
            code = cmd_selftest(cfg, out, err);
        } else {
            EquationSystem E = parse_system(load_text(cfg.input));
            if (log_enabled())
                err << "[log] loaded system '" << E.name() << "' (" << E.space().m()
                    << " dependents)\n";
            if (cfg.command == "check")
                code = cmd_check(cfg, E, out);
            else if (cfg.command == "linearize")
                code = cmd_operator(cfg, E, false, out);
            else if (cfg.command == "adjoint")
                code = cmd_operator(cfg, E, true, out);
            else if (cfg.command == "symmetries")
                code = cmd_kernel(cfg, E, true, out, err);
            else if (cfg.command == "cosymmetries")
                code = cmd_kernel(cfg, E, false, out, err);
            else if (cfg.command == "lift")
                code = cmd_lift(cfg, E, out);
            else if (cfg.command == "e1")
                code = cmd_e1(cfg, E, out);
            else if (cfg.command == "green-check")
                code = cmd_green(cfg, E, out);
        }
    } catch (const usage_failure& u) {
        err << "usage error: " << u.what() << "\n";
        return 2;
    } catch (const parse_error& p) {
        err << "parse error at byte " << p.pos << ": " << p.what() << "\n";
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (cfg.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        err << "[time] " << cfg.command << ": " << ms << " ms\n";
    }
    return code;
}

}  // namespace diffiety
