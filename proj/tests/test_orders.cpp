#include <stdexcept>

#include "doctest.h"

#include "corisk/orders.hpp"

using namespace corisk;

TEST_CASE("usual stochastic order") {
    CHECK(check_order(Marginal::gamma(0.3, 1.0), Marginal::gamma(2.0, 1.0), Order::st)
              .holds);
    CHECK_FALSE(
        check_order(Marginal::gamma(2.0, 1.0), Marginal::gamma(0.3, 1.0), Order::st)
            .holds);
    CHECK(check_order(Marginal::normal(0.0, 1.0), Marginal::normal(0.5, 1.0),
                      Order::st)
              .holds);
    // pure scale spread: cdfs cross, st fails in both directions
    const auto n1 = Marginal::normal(0.0, 1.0), n2 = Marginal::normal(0.0, 1.5);
    CHECK_FALSE(check_order(n1, n2, Order::st).holds);
    CHECK_FALSE(check_order(n2, n1, Order::st).holds);
    // a violated verdict pinpoints the crossing
    const auto v = check_order(n2, n1, Order::st);
    CHECK(v.margin < 0.0);
    REQUIRE(v.first_violation.has_value());
}

TEST_CASE("hazard rate and likelihood ratio orders") {
    // exp hazards: rate 2 vs rate 1
    CHECK(check_order(Marginal::exponential(2.0), Marginal::exponential(1.0),
                      Order::hr)
              .holds);
    CHECK_FALSE(check_order(Marginal::exponential(1.0), Marginal::exponential(2.0),
                            Order::hr)
                    .holds);
    // gamma shape increase at fixed rate is lr-ordered
    CHECK(check_order(Marginal::gamma(0.5, 1.0), Marginal::gamma(1.5, 1.0), Order::lr)
              .holds);
    CHECK(check_order(Marginal::normal(0.0, 1.0), Marginal::normal(1.0, 1.0),
                      Order::lr)
              .holds);
    CHECK_FALSE(
        check_order(Marginal::gamma(1.5, 1.0), Marginal::gamma(0.5, 1.0), Order::lr)
            .holds);
}

TEST_CASE("order implications on fixed pairs") {
    struct Pair {
        Marginal x, y;
    };
    const Pair pairs[] = {
        {Marginal::gamma(0.5, 1.0), Marginal::gamma(1.5, 1.0)},
        {Marginal::normal(0.0, 1.0), Marginal::normal(0.8, 1.0)},
        {Marginal::exponential(2.0), Marginal::exponential(1.0)},
        {Marginal::weibull(2.0, 1.0), Marginal::weibull(2.0, 1.6)},
    };
    for (const auto& pr : pairs) {
        REQUIRE(check_order(pr.x, pr.y, Order::lr).holds);
        CHECK(check_order(pr.x, pr.y, Order::hr).holds); // lr => hr
        CHECK(check_order(pr.x, pr.y, Order::st).holds); // hr => st
        CHECK(check_order(pr.x, pr.y, Order::icx).holds); // st => icx
        CHECK(check_order(pr.x, pr.y, Order::icv).holds); // st => icv
    }
}

TEST_CASE("increasing convex/concave orders separate from st") {
    const auto n1 = Marginal::normal(0.0, 1.0), n2 = Marginal::normal(0.0, 2.0);
    CHECK(check_order(n1, n2, Order::icx).holds);
    CHECK_FALSE(check_order(n1, n2, Order::st).holds);
    // mean-preserving spread: icv goes the other way
    CHECK(check_order(n2, n1, Order::icv).holds);
    CHECK_FALSE(check_order(n1, n2, Order::icv).holds);
}

TEST_CASE("dispersive order") {
    CHECK(check_order(Marginal::gamma(0.3, 1.0), Marginal::gamma(2.0, 1.0),
                      Order::disp)
              .holds);
    CHECK(check_order(Marginal::normal(0.0, 1.0), Marginal::normal(0.0, 2.0),
                      Order::disp)
              .holds);
    // scale doubling disperses a gamma
    CHECK(check_order(Marginal::gamma(1.5, 1.0), Marginal::gamma(1.5, 0.5),
                      Order::disp)
              .holds);
    CHECK_FALSE(check_order(Marginal::normal(0.0, 2.0), Marginal::normal(0.0, 1.0),
                            Order::disp)
                    .holds);
}

TEST_CASE("excess wealth order is weaker than dispersive") {
    // disp pairs are ew pairs
    CHECK(check_order(Marginal::gamma(0.3, 1.0), Marginal::gamma(2.0, 1.0), Order::ew)
              .holds);
    CHECK(check_order(Marginal::normal(0.0, 1.0), Marginal::normal(0.0, 2.0),
                      Order::ew)
              .holds);
    // Weibull(2,1) vs Weibull(1,1): ew holds while disp fails both ways
    const auto w2 = Marginal::weibull(2.0, 1.0), w1 = Marginal::weibull(1.0, 1.0);
    CHECK(check_order(w2, w1, Order::ew).holds);
    CHECK_FALSE(check_order(w2, w1, Order::disp).holds);
    CHECK_FALSE(check_order(w1, w2, Order::disp).holds);
    CHECK_FALSE(check_order(w1, w2, Order::ew).holds);
}

TEST_CASE("grid size is honoured") {
    // a coarse grid must still find an obvious violation
    const auto v = check_order(Marginal::gamma(2.0, 1.0), Marginal::gamma(0.3, 1.0),
                               Order::st, 50);
    CHECK_FALSE(v.holds);
    CHECK_THROWS_AS(check_order(Marginal::exponential(1.0), Marginal::exponential(1.0),
                                Order::st, 1),
                    std::invalid_argument);
}

TEST_CASE("order name parsing") {
    CHECK(parse_order("st") == Order::st);
    CHECK(parse_order("hr") == Order::hr);
    CHECK(parse_order("lr") == Order::lr);
    CHECK(parse_order("icx") == Order::icx);
    CHECK(parse_order("icv") == Order::icv);
    CHECK(parse_order("disp") == Order::disp);
    CHECK(parse_order("ew") == Order::ew);
    CHECK_THROWS_AS(parse_order("sl"), std::invalid_argument);
}
