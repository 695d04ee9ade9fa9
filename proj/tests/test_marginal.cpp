#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "corisk/marginal.hpp"
#include "corisk/numerics.hpp"

using namespace corisk;

namespace {
const Marginal kAll[] = {Marginal::normal(0.5, 2.0), Marginal::gamma(0.8, 0.5),
                         Marginal::gamma(2.0, 1.0),  Marginal::weibull(2.0, 1.0),
                         Marginal::weibull(0.7, 3.0), Marginal::exponential(1.5),
                         Marginal::uniform(-1.0, 3.0)};
}

TEST_CASE("quantile / cdf round trips") {
    for (const auto& m : kAll)
        for (double p : {1e-8, 1e-3, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0 - 1e-8}) {
            const double x = m.quantile(p);
            CHECK(m.cdf(x) == doctest::Approx(p).epsilon(1e-9));
            CHECK(m.quantile_comp(1.0 - p) == doctest::Approx(x).epsilon(1e-7));
        }
}

TEST_CASE("survival quantiles keep relative precision in the deep tail") {
    for (const auto& m : kAll) {
        for (double s : {1e-12, 1e-50, 1e-300}) {
            const double x = m.quantile_comp(s);
            CHECK(std::isfinite(x));
            const double got = m.sf(x);
            // A finite upper support end quantizes x at its own ulp, which
            // dwarfs s; the round trip is only meaningful on unbounded tails.
            if (got > 0.0 && !std::isfinite(m.support_hi()))
                CHECK(std::fabs(std::log(got) - std::log(s)) <
                      1e-8 * std::fabs(std::log(s)));
        }
        // deep lower coordinate must not throw either
        CHECK(std::isfinite(m.quantile(1e-300)));
    }
}

TEST_CASE("quantile_ps switches branches at the midpoint") {
    for (const auto& m : kAll) {
        CHECK(m.quantile_ps(0.3, 0.7) == m.quantile(0.3));
        CHECK(m.quantile_ps(0.9, 0.1) == m.quantile_comp(0.1));
        // both branches agree near the switch
        CHECK(m.quantile_ps(0.5, 0.5) ==
              doctest::Approx(m.quantile_ps(0.5000000001, 0.4999999999))
                  .epsilon(1e-7));
        // exact-zero coordinates are floored, not fatal
        CHECK(std::isfinite(m.quantile_ps(0.0, 1.0)));
        CHECK(std::isfinite(m.quantile_ps(1.0, 0.0)));
    }
}

TEST_CASE("means match closed forms and the quantile integral") {
    CHECK(Marginal::normal(0.5, 2.0).mean() == 0.5);
    CHECK(Marginal::gamma(0.8, 0.5).mean() == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(Marginal::weibull(2.0, 1.0).mean() ==
          doctest::Approx(0.8862269254527580).epsilon(1e-14)); // sqrt(pi)/2
    CHECK(Marginal::exponential(1.5).mean() == doctest::Approx(2.0 / 3.0));
    CHECK(Marginal::uniform(-1.0, 3.0).mean() == 1.0);

    for (const auto& m : kAll) {
        const double by_quantile =
            integrate_adaptive([&](double p) { return m.quantile(p); }, 0.0, 1.0,
                               1e-10)
                .value;
        CHECK(by_quantile == doctest::Approx(m.mean()).epsilon(1e-6));
    }
}

TEST_CASE("integrated tail matches the stop-loss quantile integral") {
    for (const auto& m : kAll)
        for (double u : {0.2, 0.5, 0.9, 0.99}) {
            const double qu = m.quantile(u);
            const double direct =
                integrate_adaptive([&](double p) { return m.quantile(p) - qu; }, u,
                                   1.0, 1e-11)
                    .value;
            CHECK(m.integrated_tail(u) == doctest::Approx(direct).epsilon(5e-7));
        }
    // u = 0 gives mean - support_lo when the support is bounded below
    CHECK(Marginal::gamma(0.8, 0.5).integrated_tail(0.0) ==
          doctest::Approx(1.6).epsilon(1e-12));
    CHECK(Marginal::uniform(-1.0, 3.0).integrated_tail(0.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(Marginal::normal(0.0, 1.0).integrated_tail(0.0),
                    std::domain_error);
    CHECK_THROWS_AS(Marginal::exponential(1.0).integrated_tail(1.0),
                    std::invalid_argument);
}

TEST_CASE("decreasing failure rate classification") {
    CHECK(Marginal::gamma(0.8, 1.0).is_dfr());
    CHECK(Marginal::gamma(1.0, 2.0).is_dfr());
    CHECK_FALSE(Marginal::gamma(1.5, 1.0).is_dfr());
    CHECK(Marginal::weibull(0.7, 1.0).is_dfr());
    CHECK_FALSE(Marginal::weibull(2.0, 1.0).is_dfr());
    CHECK(Marginal::exponential(3.0).is_dfr());
    CHECK_FALSE(Marginal::normal(0.0, 1.0).is_dfr());
    CHECK_FALSE(Marginal::uniform(0.0, 1.0).is_dfr());
}

TEST_CASE("support bounds") {
    CHECK(Marginal::normal(0.0, 1.0).support_lo() ==
          -std::numeric_limits<double>::infinity());
    CHECK(Marginal::gamma(1.0, 1.0).support_lo() == 0.0);
    CHECK(Marginal::uniform(-1.0, 3.0).support_lo() == -1.0);
    CHECK(Marginal::uniform(-1.0, 3.0).support_hi() == 3.0);
    CHECK(Marginal::exponential(1.0).support_hi() ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("marginal parsing round trips") {
    CHECK(Marginal::parse("normal:0,1").family() == MarginalFamily::normal);
    CHECK(Marginal::parse("gamma:0.5,1").param1() == 0.5);
    CHECK(Marginal::parse("weibull:2,1").param2() == 1.0);
    CHECK(Marginal::parse("exp:1.5").param1() == 1.5);
    CHECK(Marginal::parse("exponential:1.5").param1() == 1.5);
    CHECK(Marginal::parse("uniform:-1,3").param2() == 3.0);
    CHECK(Marginal::parse("gamma:0.8,0.5").to_string() == "gamma:0.8,0.5");
    CHECK(Marginal::parse("exp:2").to_string() == "exp:2");

    CHECK_THROWS_AS(Marginal::parse("cauchy:0,1"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("normal:0"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("normal:0,1,2"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("gamma:-1,1"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("normal:0,0"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("uniform:3,-1"), std::invalid_argument);
    CHECK_THROWS_AS(Marginal::parse("exp:abc"), std::invalid_argument);
}

TEST_CASE("quantile level domain errors") {
    const auto m = Marginal::gamma(1.0, 1.0);
    CHECK_THROWS_AS(m.quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(m.quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(m.quantile_comp(0.0), std::invalid_argument);
    CHECK_THROWS_AS(m.quantile_comp(1.0), std::invalid_argument);
}
