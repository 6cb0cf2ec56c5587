#include "diffiety/report.hpp"

#include <doctest.h>

#include "diffiety/parser.hpp"

using namespace diffiety;

namespace {

const char* kHeat = R"(
[system]
name = heat
independent = x, t
dependent = u

[equations]
u_t = u_{xx}
)";

const char* kKdv = R"(
[system]
name = kdv
independent = x, t
dependent = u

[equations]
u_t = 6*u*u_x + u_{xxx}
)";

const char* kBurgers = R"(
[system]
name = burgers
independent = x, t
dependent = u

[equations]
u_t = u*u_x + u_{xx}
)";

AnsatzSpace bounds(int order, int degree, int cartan = 0) {
    AnsatzSpace a;
    a.max_order = order;
    a.max_degree = degree;
    a.cartan_degree = cartan;
    return a;
}

const E1Cell& cell_at(const E1Report& r, int q) {
    for (const E1Cell& c : r.cells)
        if (c.q == q) return c;
    REQUIRE(false);
    return r.cells.front();
}

}  // namespace

TEST_CASE("kdv first-term report carries the classical conservation laws") {
    EquationSystem kdv = parse_system(kKdv);
    E1Report r = two_lines_report(kdv, 1, 1, bounds(2, 2));
    CHECK(r.system == "kdv");
    CHECK(r.n == 2);

    /* cells come out sorted by q, whole-column note first */
    REQUIRE(r.cells.size() == 4);
    CHECK(r.cells[0].q == -1);
    CHECK(r.cells[1].q == 0);
    CHECK(r.cells[2].q == 1);
    CHECK(r.cells[3].q == 2);

    const E1Cell& kernel = cell_at(r, 1);
    CHECK(kernel.kind == "kernel");
    CHECK(kernel.certified);
    CHECK(kernel.basis == std::vector<std::string>{"dv[1]u", "u*dv[1]u",
                                                   "(3*u^2 + u_{xx})*dv[1]u"});
    CHECK(kernel.dim == 3);

    /* the q = n-1 row is the cosymmetry computation, element for element */
    KernelBasis plain = cosymmetries(kdv, bounds(2, 2));
    REQUIRE(plain.dim() == static_cast<std::size_t>(kernel.dim));

    const E1Cell& vanish = cell_at(r, 0);
    CHECK(vanish.kind == "vanishing");
    CHECK(vanish.certified);
    CHECK(vanish.dim == 0);
    CHECK(vanish.basis.empty());
    CHECK(vanish.cols > 0);
    CHECK(vanish.rank == vanish.cols); /* full column rank is what "0" means */

    const E1Cell& coker = cell_at(r, 2);
    CHECK(coker.kind == "cokernel");
    CHECK(!coker.certified);
    CHECK(coker.dim == static_cast<long>(coker.rows) - static_cast<long>(coker.rank));
    CHECK(coker.basis.size() == static_cast<std::size_t>(coker.dim));
    /* the image rank must agree with the kernel-side computation */
    CHECK(coker.rank == kernel.rank);
    CHECK(coker.cols == kernel.cols);
}

TEST_CASE("heat level-2 report sees the lifted trivial cosymmetry") {
    EquationSystem heat = parse_system(kHeat);
    E1Report r = two_lines_report(heat, 2, 1, bounds(1, 1, 1));

    const E1Cell& vanish = cell_at(r, 0);
    CHECK(vanish.dim == 0);
    CHECK(vanish.rows > 0);
    CHECK(vanish.rank == vanish.cols);

    const E1Cell& kernel = cell_at(r, 1);
    CHECK(kernel.basis == std::vector<std::string>{"dv[1,2]u"});
    CHECK(kernel.dim == 1);

    CHECK(cell_at(r, -1).note.find("k = 1") != std::string::npos);
}

TEST_CASE("vanishing evidence holds for heat and burgers at both levels") {
    for (const char* text : {kHeat, kBurgers}) {
        EquationSystem E = parse_system(text);
        E1Report level1 = two_lines_report(E, 1, 1, bounds(2, 2));
        CHECK(cell_at(level1, 0).dim == 0);
        E1Report level2 = two_lines_report(E, 2, 1, bounds(2, 2, 1));
        CHECK(cell_at(level2, 0).dim == 0);
    }
}

TEST_CASE("cokernel cell is a consistent truncated quotient") {
    EquationSystem heat = parse_system(kHeat);
    E1Report r = two_lines_report(heat, 1, 1, bounds(1, 1));
    const E1Cell& coker = cell_at(r, 2);
    CHECK(coker.rows >= coker.rank);
    CHECK(coker.dim == static_cast<long>(coker.rows) - static_cast<long>(coker.rank));
    CHECK(coker.basis.size() == static_cast<std::size_t>(coker.dim));
    /* representatives live in the Cartan picture: each mentions a dual
     * generator */
    for (const std::string& b : coker.basis) CHECK(b.find("dv[1]") != std::string::npos);
}

TEST_CASE("zero column notes delegate by level") {
    EquationSystem heat = parse_system(kHeat);
    CHECK(zero_column_note(heat, 1).note.find("horizontal cohomology") != std::string::npos);
    CHECK(zero_column_note(heat, 2).note.find("k = 1") != std::string::npos);
    CHECK(zero_column_note(heat, 3).note.find("k = 2") != std::string::npos);
    CHECK(zero_column_note(heat, 2).kind == "note");
}

TEST_CASE("report serialization is deterministic and round-trips") {
    EquationSystem kdv = parse_system(kKdv);
    std::string a = to_json_string(two_lines_report(kdv, 1, 1, bounds(2, 2)));
    std::string b = to_json_string(two_lines_report(kdv, 1, 1, bounds(2, 2)));
    CHECK(a == b);

    auto j = nlohmann::json::parse(a);
    CHECK(j["system"] == "kdv");
    CHECK(j["k"] == 1);
    CHECK(j["p"] == 1);
    CHECK(j["cells"].size() == 4);
    CHECK(j["cells"][2]["kind"] == "kernel");
    CHECK(j["cells"][2]["dims"]["dim"] == 3);
    CHECK(j["cells"][2]["certified"] == true);
    CHECK(j["cells"][3]["certified"] == false);
    CHECK(j["config"]["max_order"] == 2);
    CHECK(j["config"]["cartan_degree"] == 0);
}
