#include "doctest.h"
#include "jetgauge/jet.hpp"
#include "testutil.hpp"

using namespace jetgauge;
using testutil::chart2;
using testutil::chart2_2d;
using testutil::matches;
using testutil::pe;

TEST_SUITE("jet") {

TEST_CASE("multi-index enumeration is sorted and complete") {
    auto one = multi_indices_up_to(1, 2);
    REQUIRE(one.size() == 3);
    CHECK(one[0].order() == 0);
    CHECK(one[2] == MultiIndex{2});

    auto two = multi_indices_up_to(2, 2);
    REQUIRE(two.size() == 6);
    for (std::size_t i = 0; i + 1 < two.size(); ++i) CHECK(two[i] < two[i + 1]);
    CHECK(two.back().order() == 2);

    MultiIndex j{1, 2};
    CHECK(j.order() == 3);
    CHECK(j.bump(0) == MultiIndex{2, 2});
    CHECK(j.drop(1) == MultiIndex{1, 1});
    CHECK(MultiIndex::unit(2, 1) == MultiIndex{0, 1});
}

TEST_CASE("jet ids and names round trip") {
    auto ctx = chart2_2d();
    int id = ctx->dep_jet_id(0, MultiIndex{1, 1});
    CHECK(ctx->name_of(id) == "u_xt");
    CHECK(ctx->id_of("u_xt") == id);
    auto [a, J] = ctx->dep_jet_info(id);
    CHECK(a == 0);
    CHECK(J == MultiIndex{1, 1});
    CHECK(ctx->jet_successor(ctx->dep_jet_id(0, MultiIndex{1, 0}), 1) == id);
    CHECK_THROWS_AS(ctx->jet_successor(ctx->dep_jet_id(0, MultiIndex{1, 1}), 0),
                    order_overflow_error);
}

TEST_CASE("total derivative differentiates through the jet ladder") {
    auto ctx = chart2();
    CHECK(matches(total_derivative(ctx, 0, pe(ctx, "u")), ctx, "u_x"));
    CHECK(is_one(total_derivative(ctx, 0, pe(ctx, "x"))));
    CHECK(matches(total_derivative(ctx, 0, pe(ctx, "u*v")), ctx,
                  "u_x*v + u*v_x"));
    CHECK(matches(total_derivative(ctx, 0, pe(ctx, "sin(u)")), ctx,
                  "cos(u)*u_x"));
    CHECK(matches(total_derivative(ctx, 0, pe(ctx, "x*u_x")), ctx,
                  "u_x + x*u_xx"));
    CHECK(is_zero(total_derivative(ctx, 0, num(5))));
    // The chart tops out at second order, so a second-order jet has no
    // successor to differentiate into.
    CHECK_THROWS_AS(total_derivative(ctx, 0, pe(ctx, "u_xx")),
                    order_overflow_error);
}

TEST_CASE("gauge parameters are inert under the total derivative") {
    auto ctx = chart2();
    CHECK(is_zero(total_derivative(ctx, 0, pe(ctx, "a"))));
    CHECK(matches(total_derivative(ctx, 0, pe(ctx, "a*u")), ctx, "a*u_x"));
}

TEST_CASE("repeated application matches the multi-index form") {
    auto ctx = chart2();
    Expr f = pe(ctx, "u^2");
    Expr once = total_derivative(ctx, 0, f);
    CHECK(equal(total_derivative_multi(ctx, MultiIndex{2}, f),
                total_derivative(ctx, 0, once)));
    CHECK(equal(total_derivative_multi(ctx, MultiIndex{0}, f), f));
}

TEST_CASE("total derivatives along different variables commute") {
    auto ctx = chart2_2d();
    for (const char* s : {"u*v", "sin(u)*v + x*t", "u*u + v*t"}) {
        Expr f = pe(ctx, s);
        Expr xt = total_derivative(ctx, 1, total_derivative(ctx, 0, f));
        Expr tx = total_derivative(ctx, 0, total_derivative(ctx, 1, f));
        CHECK(equal(xt, tx));
    }
}

TEST_CASE("augmented derivative adds the gauge-jet ladder") {
    auto ctx = JetContext::make({"x"}, {"u"}, {"a"}, 2, true);
    CHECK(matches(gauge_derivative(ctx, 0, pe(ctx, "a")), ctx, "a_x"));
    CHECK(is_zero(gauge_derivative(ctx, 0, pe(ctx, "u*x"))));
    CHECK(matches(augmented_total_derivative(ctx, 0, pe(ctx, "a*u")), ctx,
                  "a_x*u + a*u_x"));
    CHECK(matches(augmented_total_derivative(ctx, 0, pe(ctx, "sin(a)")), ctx,
                  "cos(a)*a_x"));
    // On gauge-free input the augmented and plain derivatives agree.
    Expr f = pe(ctx, "u*u_x");
    CHECK(equal(augmented_total_derivative(ctx, 0, f),
                total_derivative(ctx, 0, f)));
}

}  // TEST_SUITE
