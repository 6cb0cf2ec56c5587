#include <doctest.h>

#include "diffiety/parser.hpp"
#include "diffiety/random_gen.hpp"

using namespace diffiety;

namespace {

JetSpace scalar_space() { return JetSpace{{"x", "t"}, {"u"}}; }

Expr parse(const std::string& s) { return parse_expression(s, scalar_space()); }

std::string str(const Expr& e) { return e.to_string(scalar_space()); }

/* Evaluation points with nonzero coordinates keep random denominators tame. */
std::map<JetCoord, Rational> random_point(Rng& rng, const Expr& e) {
    std::map<JetCoord, Rational> pt;
    for (auto& c : e.coords()) pt[c] = Rational(rng.range(1, 19), rng.range(1, 7));
    return pt;
}

}  // namespace

TEST_CASE("parse round-trips the canonical printing") {
    CHECK(str(parse("6*u*u_x + u_{xxx}")) == "6*u*u_x + u_{xxx}");
    CHECK(str(parse("u_{xxx} + 6*u*u_x")) == "6*u*u_x + u_{xxx}");
    CHECK(str(parse("2*t*u_x + x*u")) == "2*t*u_x + x*u");
    CHECK(str(parse("u^2 - 1")) == "u^2 - 1");
    CHECK(str(parse("3/4*u")) == "3/4*u");
    CHECK(str(parse("-u_x")) == "-u_x");
    CHECK(str(parse("0")) == "0");
}

TEST_CASE("canonical form collapses equal expressions") {
    CHECK(parse("u - u").is_zero());
    CHECK(str(parse("(u^2 - 1)/(u - 1)")) == "u + 1");
    CHECK(parse("(u + 1)^2") == parse("u^2 + 2*u + 1"));
    CHECK(parse("u/u") == Expr(1));
    CHECK(parse("(u_x + u)^2 - (u_x - u)^2") == parse("4*u*u_x"));
    CHECK(parse("1/u + 1/u") == parse("2/u"));
    CHECK(str(parse("u_x/u^2")) == "u_x/u^2");
}

TEST_CASE("fractions reduce with monic denominators") {
    Expr e = parse("u_x/(2*u)");
    CHECK(str(e) == "(1/2*u_x)/u");
    CHECK(e.den().leading_coeff() == 1);
    Expr f = parse("(u^2 + u)/(2*u + 2)");
    CHECK(str(f) == "1/2*u");
}

TEST_CASE("partial derivatives") {
    JetCoord u = JetCoord::jet(0);
    JetCoord ux = JetCoord::jet(0, MultiIndex::unit(0));
    CHECK(parse("u*u_x").partial(u) == parse("u_x"));
    CHECK(parse("u_x^2").partial(ux) == parse("2*u_x"));
    CHECK(parse("x*u^2").partial(u) == parse("2*x*u"));
    CHECK(parse("x*u^2").partial(JetCoord::independent(0)) == parse("u^2"));
    CHECK(parse("u_x/u").partial(u) == parse("-u_x/u^2"));
    CHECK(parse("u_{xxx}").partial(u).is_zero());
}

TEST_CASE("substitution") {
    JetCoord u = JetCoord::jet(0);
    CHECK(parse("u^2 + u_x").substitute({{u, parse("u + 1")}}) == parse("u^2 + 2*u + u_x + 1"));
    CHECK(parse("u*u_x").substitute({{u, Expr(0)}}).is_zero());
    CHECK_THROWS_AS(parse("u_x/u").substitute({{u, Expr(0)}}), zero_division_error);
    /* simultaneous, not sequential */
    JetCoord ux = JetCoord::jet(0, MultiIndex::unit(0));
    CHECK(parse("u*u_x").substitute({{u, parse("u_x")}, {ux, parse("u")}}) == parse("u*u_x"));
}

TEST_CASE("division by zero expressions is rejected") {
    CHECK_THROWS_AS(parse("u/(u - u)"), parse_error);
    CHECK_THROWS_AS(parse("u") / parse("0"), zero_division_error);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("u + w");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.pos == 4);
        CHECK(std::string(e.what()).find("w") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("u +"), parse_error);
    CHECK_THROWS_AS(parse("u u"), parse_error);
    CHECK_THROWS_AS(parse("u_{x"), parse_error);
    CHECK_THROWS_AS(parse("u_y"), parse_error);
    CHECK_THROWS_AS(parse("u ^ x"), parse_error);
}

TEST_CASE("field axioms on random expressions") {
    Rng rng(20260825);
    JetSpace sp = scalar_space();
    for (int it = 0; it < 60; ++it) {
        Expr a = random_fraction_expr(rng, sp, 2, 3, 3, true);
        Expr b = random_fraction_expr(rng, sp, 2, 3, 3, true);
        Expr c = random_fraction_expr(rng, sp, 2, 3, 3, true);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("partial derivative satisfies the Leibniz rule") {
    Rng rng(7);
    JetSpace sp = scalar_space();
    for (int it = 0; it < 40; ++it) {
        Expr a = random_fraction_expr(rng, sp, 2, 3, 3, true);
        Expr b = random_fraction_expr(rng, sp, 2, 3, 3, true);
        JetCoord c = random_jet_coord(rng, sp, 2);
        CHECK((a * b).partial(c) == a.partial(c) * b + a * b.partial(c));
    }
}

TEST_CASE("canonical forms agree with pointwise evaluation") {
    Rng rng(99);
    JetSpace sp = scalar_space();
    for (int it = 0; it < 40; ++it) {
        Expr a = random_poly_expr(rng, sp, 2, 3, 3, true);
        Expr b = random_poly_expr(rng, sp, 2, 3, 3, true);
        Expr lhs = (a + b) * (a - b);
        Expr rhs = a * a - b * b;
        CHECK(lhs == rhs);
        for (int p = 0; p < 5; ++p) {
            auto pt = random_point(rng, lhs + a + b);
            CHECK(lhs.eval(pt) == a.eval(pt) * a.eval(pt) - b.eval(pt) * b.eval(pt));
        }
    }
}

TEST_CASE("gcd normalizes shared factors across fractions") {
    Rng rng(4242);
    JetSpace sp = scalar_space();
    for (int it = 0; it < 25; ++it) {
        Expr a = random_poly_expr(rng, sp, 2, 2, 2, false);
        Expr b = random_poly_expr(rng, sp, 2, 2, 2, false) + Expr(1);
        Expr common = random_poly_expr(rng, sp, 1, 2, 2, false) + Expr(rng.nonzero_rational());
        if (b.is_zero() || common.is_zero()) continue;
        CHECK((a * common) / (b * common) == a / b);
    }
}
