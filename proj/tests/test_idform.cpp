#include <doctest.h>

#include "diffiety/idform.hpp"
#include "diffiety/parser.hpp"
#include "diffiety/random_gen.hpp"

using namespace diffiety;

namespace {

JetSpace sp() { return JetSpace{{"x", "t"}, {"u"}}; }

IDForm pf(const std::string& s, int slots = 2) { return parse_idform(s, sp(), slots); }

/* Random monomial form: a few generators over `slots` slots with a random
 * polynomial coefficient.  Homogeneous by construction. */
IDForm random_monomial_form(Rng& rng, int slots, int max_gens) {
    std::vector<IDGen> gens;
    int count = rng.range(0, max_gens);
    for (int i = 0; i < count; ++i) {
        SlotSet K = static_cast<SlotSet>(rng.range(1, (1 << slots) - 1));
        JetCoord c = rng.chance(1, 4) ? JetCoord::independent(rng.range(0, 1))
                                      : random_jet_coord(rng, sp(), 2);
        gens.push_back(IDGen{K, c});
    }
    Expr coeff = random_poly_expr(rng, sp(), 2, 2, 2, true);
    return IDForm::term(slots, gens, coeff);
}

IDForm random_form(Rng& rng, int slots, int max_gens, int max_terms) {
    IDForm w(slots);
    int terms = rng.range(1, max_terms);
    for (int i = 0; i < terms; ++i) w += random_monomial_form(rng, slots, max_gens);
    return w;
}

/* Slot-wise multidegree of a monomial as a bit-dot-product helper. */
int koszul_dot(const IDMonomial& a, const IDMonomial& b, int slots) {
    int dot = 0;
    for (int i = 1; i <= slots; ++i) dot += a.degree_in_slot(i) * b.degree_in_slot(i);
    return dot;
}

}  // namespace

TEST_CASE("generator products carry Koszul signs") {
    CHECK(pf("d[1]x*d[2]x") == pf("d[2]x*d[1]x"));
    CHECK(pf("dv[1]u*dv[2]u") == pf("dv[2]u*dv[1]u"));
    CHECK(pf("dv[1]u*dv[1]u_x") == -pf("dv[1]u_x*dv[1]u"));
    CHECK(pf("dv[1]u*dv[1]u").is_zero());
    CHECK(pf("d[1]x*d[1]x").is_zero());
    CHECK_FALSE(pf("dv[1,2]u*dv[1,2]u").is_zero());
    CHECK(pf("dv[1,2]u*dv[1]u") == -pf("dv[1]u*dv[1,2]u"));
    CHECK(pf("dv[1,2]u*dv[2]u_x") == -pf("dv[2]u_x*dv[1,2]u"));
}

TEST_CASE("graded commutativity with multidegree dot products") {
    Rng rng(1001);
    for (int it = 0; it < 120; ++it) {
        int slots = rng.range(1, 3);
        IDForm a = random_monomial_form(rng, slots, 2);
        IDForm b = random_monomial_form(rng, slots, 2);
        if (a.is_zero() || b.is_zero()) continue;
        int dot = koszul_dot(a.terms().begin()->first, b.terms().begin()->first, slots);
        IDForm ba = b * a;
        CHECK(a * b == (dot % 2 != 0 ? -ba : ba));
    }
}

TEST_CASE("associativity and distributivity") {
    Rng rng(1002);
    for (int it = 0; it < 60; ++it) {
        int slots = rng.range(1, 3);
        IDForm a = random_form(rng, slots, 2, 2);
        IDForm b = random_form(rng, slots, 2, 2);
        IDForm c = random_form(rng, slots, 2, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("vertical differential on generators and coefficients") {
    CHECK(d_vertical(pf("u"), 1) == pf("dv[1]u"));
    CHECK(d_vertical(pf("u^2"), 1) == pf("2*u*dv[1]u"));
    CHECK(d_vertical(pf("dv[2]u"), 1) == pf("dv[1,2]u"));
    CHECK(d_vertical(pf("dv[1]u"), 1).is_zero());
    CHECK(d_vertical(pf("d[2]x"), 1) == pf("d[1,2]x"));
    CHECK(d_vertical(pf("d[1]x"), 1).is_zero());
    CHECK(d_vertical(pf("x*t"), 1).is_zero());
    /* disjoint slots pass without a sign; a matching slot flips it */
    CHECK(d_vertical(pf("dv[1]u*dv[2]u"), 2) == pf("dv[1,2]u*dv[2]u"));
    CHECK(d_vertical(pf("dv[1]u*dv[1]u_x"), 2) ==
          pf("dv[1,2]u*dv[1]u_x + dv[1]u*dv[1,2]u_x"));
    CHECK(d_vertical(pf("dv[1]u_x*dv[2]u"), 1) == -pf("dv[1]u_x*dv[1,2]u"));
}

TEST_CASE("slot differentials square to zero and commute") {
    Rng rng(1003);
    JetSpace space = sp();
    for (int it = 0; it < 25; ++it) {
        int slots = rng.range(2, 3);
        IDForm w = random_form(rng, slots, 2, 2);
        CHECK(d_vertical(d_vertical(w, 1), 1).is_zero());
        CHECK(d_vertical(d_vertical(w, 1), 2) == d_vertical(d_vertical(w, 2), 1));
        CHECK(d_slot(d_slot(w, 1, space), 1, space).is_zero());
        CHECK(d_slot(d_slot(w, 1, space), 2, space) == d_slot(d_slot(w, 2, space), 1, space));
        /* the two halves anticommute inside one slot */
        CHECK(d_horizontal(d_vertical(w, 1), 1, space) ==
              -d_vertical(d_horizontal(w, 1, space), 1));
    }
}

TEST_CASE("slot differentials are graded derivations") {
    Rng rng(1004);
    JetSpace space = sp();
    for (int it = 0; it < 40; ++it) {
        int slots = rng.range(1, 3);
        int i = rng.range(1, slots);
        IDForm a = random_monomial_form(rng, slots, 2);
        IDForm b = random_form(rng, slots, 2, 2);
        if (a.is_zero()) continue;
        int deg_i = a.terms().begin()->first.degree_in_slot(i);
        IDForm adb = a * d_slot(b, i, space);
        CHECK(d_slot(a * b, i, space) ==
              d_slot(a, i, space) * b + (deg_i % 2 != 0 ? -adb : adb));
    }
}

TEST_CASE("horizontal differential expands along base differentials") {
    CHECK(d_horizontal(pf("u"), 1, sp()) == pf("u_x*d[1]x + u_t*d[1]t"));
    CHECK(d_slot(pf("u"), 1, sp()) == pf("u_x*d[1]x + u_t*d[1]t + dv[1]u"));
    CHECK(d_horizontal(pf("d[2]x"), 1, sp()).is_zero());
}

TEST_CASE("total derivative on forms") {
    JetSpace space = sp();
    CHECK(total_derivative_idf(pf("dv[1]u"), 0, space) == pf("dv[1]u_x"));
    CHECK(total_derivative_idf(pf("u*dv[1]u_x"), 0, space) ==
          pf("u_x*dv[1]u_x + u*dv[1]u_{xx}"));
    CHECK(total_derivative_idf(pf("d[1]x"), 0, space).is_zero());
    CHECK(total_derivative_idf(pf("x*d[1]x"), 0, space) == pf("d[1]x"));
    Rng rng(1005);
    for (int it = 0; it < 25; ++it) {
        IDForm w = random_form(rng, 2, 2, 2);
        /* total derivatives commute with the vertical differential */
        CHECK(total_derivative_idf(d_vertical(w, 1), 0, space) ==
              d_vertical(total_derivative_idf(w, 0, space), 1));
        CHECK(total_derivative_idf(total_derivative_idf(w, 0, space), 1, space) ==
              total_derivative_idf(total_derivative_idf(w, 1, space), 0, space));
    }
}

TEST_CASE("restriction to an evolution system rewrites generators") {
    EquationSystem heat = parse_system(R"(
[system]
name = heat
independent = x, t
dependent = u
[equations]
u_t = u_{xx}
)");
    EquationSystem kdv = parse_system(R"(
[system]
name = kdv
independent = x, t
dependent = u
[equations]
u_t = 6*u*u_x + u_{xxx}
)");
    CHECK(restrict_idform(pf("dv[1]u_t"), heat) == pf("dv[1]u_{xx}"));
    CHECK(restrict_idform(pf("dv[1]u_t"), kdv) ==
          pf("6*u_x*dv[1]u + 6*u*dv[1]u_x + dv[1]u_{xxx}"));
    CHECK(restrict_idform(pf("u_t*dv[1]u"), heat) == pf("u_{xx}*dv[1]u"));
    /* idempotent */
    IDForm w = pf("dv[1]u_{xt}*dv[2]u_t");
    CHECK(restrict_idform(restrict_idform(w, kdv), kdv) == restrict_idform(w, kdv));
    /* internal slot differentials still square to zero and commute */
    Rng rng(1006);
    for (int it = 0; it < 12; ++it) {
        IDForm a = restrict_idform(random_form(rng, 2, 2, 2), heat);
        CHECK(d_slot_internal(d_slot_internal(a, 1, heat), 1, heat).is_zero());
        CHECK(d_slot_internal(d_slot_internal(a, 1, heat), 2, heat) ==
              d_slot_internal(d_slot_internal(a, 2, heat), 1, heat));
    }
    /* internal D_t acts through the equation on generators */
    CHECK(total_derivative_idf_internal(pf("dv[1]u"), 1, heat) == pf("dv[1]u_{xx}"));
}

TEST_CASE("iterated vertical differential") {
    CHECK(d_K_vertical(pf("u"), slot_bit(1) | slot_bit(2)) ==
          d_vertical(d_vertical(pf("u"), 2), 1));
    CHECK(d_K_vertical(pf("u"), slot_bit(1)) == pf("dv[1]u"));
    /* dv[{1,2}](u) = dv[1,2]u plus nothing else on a coordinate */
    CHECK(d_K_vertical(pf("u"), slot_bit(1) | slot_bit(2)) == pf("dv[1,2]u"));
    /* on a product of coordinates the cross terms appear */
    CHECK(d_K_vertical(pf("u*u_x"), slot_bit(1) | slot_bit(2)) ==
          pf("u*dv[1,2]u_x + u_x*dv[1,2]u + dv[1]u*dv[2]u_x + dv[1]u_x*dv[2]u"));
}

TEST_CASE("cartan detection") {
    CHECK(is_cartan(pf("dv[1]u*dv[2]u_x")));
    CHECK(is_cartan(pf("u*u_x", 1)));
    CHECK_FALSE(is_cartan(pf("dv[1]u + d[2]x")));
}

TEST_CASE("form printing round-trips") {
    for (const char* s : {"dv[1]u_x*d[2]x + 3*u*dv[1,2]u", "-dv[1]u",
                          "(u + 1)*dv[1]u + 1/2*dv[2]u_{xx}", "0",
                          "dv[1]u_x/u + x*d[1]t*dv[2]u"}) {
        IDForm w = pf(s);
        CHECK(pf(w.to_string(sp())) == w);
    }
    CHECK(pf("dv[2,1]u") == pf("dv[1,2]u"));
    CHECK(pf("dv[1]u").to_string(sp()) == "dv[1]u");
    CHECK(pf("0").to_string(sp()) == "0");
    CHECK_THROWS_AS(pf("dv[3]u"), parse_error);
    CHECK_THROWS_AS(pf("dv[1]x"), parse_error);
    CHECK_THROWS_AS(pf("d[1]u"), parse_error);
    CHECK_THROWS_AS(pf("dv[1]u/dv[2]u"), parse_error);
}
