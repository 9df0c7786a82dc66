#include <cmath>

#include "doctest.h"
#include "jetgauge/jet.hpp"
#include "testutil.hpp"

using namespace jetgauge;
using testutil::chart2;
using testutil::matches;
using testutil::pe;

TEST_SUITE("expr") {

TEST_CASE("rationals normalize and stay exact") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-4, -8).num() == 1);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(-3, 2).is_negative());
    CHECK(Rational(7).is_integer());
    CHECK_FALSE(Rational(7, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 3) / Rational(0), std::domain_error);
}

TEST_CASE("parser resolves jet names against the chart") {
    auto ctx = chart2();
    CHECK(to_string(pe(ctx, "u_xx")) == "u_xx");
    CHECK(to_string(pe(ctx, "2*u + a*v")) == "2*u + a*v");
    CHECK(matches(pe(ctx, "u/v"), ctx, "u*v^-1"));
    CHECK(matches(pe(ctx, "2^10"), ctx, "1024"));
    CHECK(matches(pe(ctx, "-u^2"), ctx, "-(u^2)"));
    CHECK(matches(pe(ctx, "pi/2*u^3"), ctx, "(pi*u^3)/2"));
    CHECK_THROWS_AS(pe(ctx, "u +"), std::runtime_error);
    CHECK_THROWS_AS(pe(ctx, "(u"), std::runtime_error);
    CHECK_THROWS_AS(pe(ctx, "w"), parse_error);
    CHECK_THROWS_AS(pe(ctx, "tan(u)"), std::runtime_error);
}

TEST_CASE("exponents bind as signed rationals") {
    auto ctx = chart2();
    CHECK(to_string(pe(ctx, "u^1/2")) == "u^1/2");
    CHECK(matches(pe(ctx, "u^-1"), ctx, "1/u"));
    CHECK(matches(pe(ctx, "u^-3/2"), ctx, "1/u/u^1/2"));
    // The slash after ^ belongs to the exponent, so a quotient needs parens.
    CHECK(matches(pe(ctx, "(pi^2)/4"), ctx, "1/4*pi*pi"));
}

TEST_CASE("like terms and like factors merge") {
    auto ctx = chart2();
    CHECK(matches(pe(ctx, "u + u"), ctx, "2*u"));
    CHECK(matches(pe(ctx, "u*u"), ctx, "u^2"));
    CHECK(is_one(pe(ctx, "u*u^-1")));
    CHECK(is_zero(pe(ctx, "(u + v) - (u + v)")));
    CHECK(matches(pe(ctx, "3*(u/3)"), ctx, "u"));
    CHECK(matches(pe(ctx, "u^1/2 * u^1/2"), ctx, "u"));
    CHECK(matches(pe(ctx, "(u^1/2)^2"), ctx, "u"));
}

TEST_CASE("products of sums expand to the flat normal form") {
    auto ctx = chart2();
    CHECK(matches(pe(ctx, "(u + v)*(u - v)"), ctx, "u^2 - v^2"));
    CHECK(matches(pe(ctx, "(u + v)^2"), ctx, "u^2 + 2*u*v + v^2"));
    CHECK(matches(pe(ctx, "(u + 1)^3"), ctx, "u^3 + 3*u^2 + 3*u + 1"));
    CHECK(is_one(pe(ctx, "(u + v)*(u + v)^-1")));
    CHECK(to_string(pe(ctx, "(u + v)*(u - v)")) == "u^2 - v^2");
}

TEST_CASE("exact quotients of sums cancel") {
    auto ctx = chart2();
    CHECK(is_one(pe(ctx, "(u^2 + v^2)/(u^2 + v^2)")));
    CHECK(matches(pe(ctx, "(2*u + 2*v)^-1"), ctx, "1/2*(u + v)^-1"));
    CHECK(matches(pe(ctx, "(u*v + u^2)/(u + v)"), ctx, "u"));
}

TEST_CASE("square roots are rational powers") {
    auto ctx = chart2();
    Expr s = sqrt_e(pe(ctx, "u^2 + v^2"));
    CHECK(equal(s, pe(ctx, "(u^2 + v^2)^1/2")));
    CHECK(matches(sqrt_e(num(Rational(9, 4))), ctx, "3/2"));
    CHECK(matches(sqrt_e(num(12)), ctx, "2*3^1/2"));
    CHECK(matches(sqrt_e(mul(pe(ctx, "1/4"), mul(pi_const(), pi_const()))), ctx, "pi/2"));
    // No sign assumption: an even power under the root stays put.
    CHECK(to_string(sqrt_e(pe(ctx, "v^2"))) == "(v^2)^1/2");
    CHECK(to_string(sqrt_e(pe(ctx, "30*v^2"))) == "(30*v^2)^1/2");
    CHECK(matches(powr(sqrt_e(pe(ctx, "30*v^2")), Rational(2)), ctx, "30*v^2"));
}

TEST_CASE("fractional powers of products shed their integer part") {
    auto ctx = chart2();
    // (30 v^2)^-3/2 = (30 v^2)^-1 (30 v^2)^-1/2, so multiplying back by
    // 30 v^2 lands exactly on the half power.
    Expr a = mul(pe(ctx, "30*v^2"), pe(ctx, "(30*v^2)^-3/2"));
    CHECK(equal(a, pe(ctx, "(30*v^2)^-1/2")));
    CHECK(matches(pe(ctx, "(30*v^2)^3/2"), ctx, "30*v^2*(30*v^2)^1/2"));
}

TEST_CASE("trigonometric values on the quarter-turn grid fold") {
    auto ctx = chart2();
    CHECK(is_zero(sin_e(num(0))));
    CHECK(is_one(cos_e(num(0))));
    CHECK(is_zero(sin_e(pi_const())));
    CHECK(matches(cos_e(pi_const()), ctx, "-1"));
    CHECK(is_one(sin_e(pe(ctx, "pi/2"))));
    CHECK(is_zero(cos_e(pe(ctx, "pi/2"))));
    CHECK(matches(sin_e(pe(ctx, "3*pi/2")), ctx, "-1"));
    Expr u = pe(ctx, "u");
    CHECK(equal(sin_e(neg(u)), neg(sin_e(u))));
    CHECK(equal(cos_e(neg(u)), cos_e(u)));
}

TEST_CASE("exponentials compose through powers") {
    auto ctx = chart2();
    CHECK(is_one(exp_e(num(0))));
    CHECK(is_zero(log_e(num(1))));
    Expr a = pe(ctx, "a");
    CHECK(equal(mul(exp_e(a), exp_e(a)), exp_e(mul(num(2), a))));
    CHECK(equal(powr(exp_e(a), Rational(-1)), exp_e(neg(a))));
}

TEST_CASE("partial derivatives follow the usual rules") {
    auto ctx = chart2();
    CHECK(matches(pdiff(pe(ctx, "u^2*v"), ctx, "u"), ctx, "2*u*v"));
    CHECK(matches(pdiff(pe(ctx, "sin(u)"), ctx, "u"), ctx, "cos(u)"));
    CHECK(matches(pdiff(pe(ctx, "cos(u)"), ctx, "u"), ctx, "-sin(u)"));
    CHECK(matches(pdiff(pe(ctx, "exp(2*u)"), ctx, "u"), ctx, "2*exp(2*u)"));
    CHECK(matches(pdiff(pe(ctx, "log(u)"), ctx, "u"), ctx, "1/u"));
    CHECK(matches(pdiff(pe(ctx, "(1 - u^2)^1/2"), ctx, "u"), ctx,
                  "-u*(1 - u^2)^-1/2"));
    CHECK(is_zero(pdiff(pe(ctx, "v^3"), ctx, "u")));
    CHECK(matches(pdiff(pe(ctx, "u_x^2"), ctx, "u_x"), ctx, "2*u_x"));
}

TEST_CASE("evaluation faults on domain violations") {
    auto ctx = chart2();
    EvalPoint p;
    p.values.assign(ctx->total_symbols(), 0.0);
    int u = *ctx->id_of("u");
    p.values[u] = -1.0;
    CHECK_THROWS_AS(eval(pe(ctx, "u^1/2"), p), eval_error);
    CHECK_THROWS_AS(eval(pe(ctx, "log(u)"), p), eval_error);
    p.values[u] = 0.0;
    CHECK_THROWS_AS(eval(pe(ctx, "1/u"), p), eval_error);
    p.values[u] = 2.0;
    CHECK(eval(pe(ctx, "u^2 + 1"), p) == doctest::Approx(5.0));
    CHECK(eval(pe(ctx, "sin(u)^2 + cos(u)^2"), p) == doctest::Approx(1.0));
}

TEST_CASE("substitution rewrites whole coordinates") {
    auto ctx = chart2();
    std::map<int, Expr> m;
    m[*ctx->id_of("u")] = pe(ctx, "u^2");
    CHECK(matches(substitute(pe(ctx, "u + v"), m), ctx, "u^2 + v"));
    CHECK(matches(substitute(pe(ctx, "sin(u)*u_x"), m), ctx, "sin(u^2)*u_x"));
}

TEST_CASE("chart queries see through the tree") {
    auto ctx = chart2();
    CHECK(max_jet_order(pe(ctx, "u_xx + v_x")) == 2);
    CHECK(max_jet_order(pe(ctx, "u + 1")) == 0);
    CHECK(contains_gauge(pe(ctx, "a*u")));
    CHECK_FALSE(contains_gauge(pe(ctx, "u*v_x")));
    CHECK(chart_of(num(3)) == nullptr);
    CHECK(chart_of(pe(ctx, "u")) == ctx.get());
}

TEST_CASE("mixed-chart arithmetic is rejected") {
    auto ctx = chart2();
    auto other = chart2();
    CHECK_THROWS_AS(add(pe(ctx, "u"), pe(other, "v")), context_mismatch_error);
}

}  // TEST_SUITE
