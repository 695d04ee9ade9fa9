#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "corisk/copula.hpp"

using namespace corisk;

namespace {
const double kGrid[] = {0.05, 0.2, 0.5, 0.8, 0.95};
}

TEST_CASE("copula closed forms") {
    const auto g2 = Copula::gumbel(2.0);
    // C(1/2,1/2) = exp(-2^{1/theta} ln 2)
    CHECK(g2.cdf(0.5, 0.5) ==
          doctest::Approx(std::exp(-std::sqrt(2.0) * std::log(2.0))).epsilon(1e-14));

    const auto f = Copula::fgm(-0.8);
    for (double u : kGrid)
        for (double v : kGrid)
            CHECK(f.cdf(u, v) ==
                  doctest::Approx(u * v * (1.0 - 0.8 * (1.0 - u) * (1.0 - v)))
                      .epsilon(1e-14));

    CHECK(Copula::independence().cdf(0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(Copula::comonotonic().cdf(0.3, 0.7) == 0.3);
    // theta = 1 and alpha = 0 are independence
    CHECK(Copula::gumbel(1.0).cdf(0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-13));
    CHECK(Copula::fgm(0.0).cdf(0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-15));
}

TEST_CASE("copula boundary and Frechet bounds") {
    const Copula cs[] = {Copula::gumbel(3.0), Copula::fgm(0.7), Copula::fgm(-1.0),
                         Copula::independence(), Copula::comonotonic()};
    for (const auto& c : cs)
        for (double u : kGrid) {
            CHECK(c.cdf(u, 1.0) == doctest::Approx(u).epsilon(1e-14));
            CHECK(c.cdf(1.0, u) == doctest::Approx(u).epsilon(1e-14));
            CHECK(c.cdf(u, 0.0) == 0.0);
            for (double v : kGrid) {
                const double val = c.cdf(u, v);
                CHECK(val >= std::max(0.0, u + v - 1.0) - 1e-12);
                CHECK(val <= std::min(u, v) + 1e-12);
            }
        }
}

TEST_CASE("joint tail agrees with inclusion-exclusion") {
    const Copula cs[] = {Copula::gumbel(2.0), Copula::fgm(-0.8),
                         Copula::independence()};
    for (const auto& c : cs)
        for (double u : kGrid)
            for (double v : kGrid)
                CHECK(c.joint_tail_sv(u, 1.0 - v) ==
                      doctest::Approx(1.0 - u - v + c.cdf(u, v)).epsilon(1e-12));
    // comonotonic: P(U>u, V>v) = min(1-u, 1-v)
    for (double u : kGrid)
        CHECK(Copula::comonotonic().joint_tail_sv(u, 0.3) ==
              doctest::Approx(std::min(1.0 - u, 0.3)).epsilon(1e-14));
}

TEST_CASE("conditional tail cdf: range, monotonicity, grounding") {
    const Copula cs[] = {Copula::gumbel(2.0), Copula::fgm(-0.8),
                         Copula::independence()};
    for (const auto& c : cs)
        for (double u : {0.0, 0.5, 0.9, 0.99}) {
            double prev = 0.0;
            for (double v : kGrid) {
                const double p = c.cond_tail_cdf(u, v);
                CHECK(p >= prev - 1e-13);
                CHECK(p <= 1.0 + 1e-13);
                prev = p;
            }
            CHECK(c.cond_tail_cdf(u, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        }
    // independence conditions to the marginal law
    for (double v : kGrid)
        CHECK(Copula::independence().cond_tail_cdf(0.7, v) ==
              doctest::Approx(v).epsilon(1e-13));
}

TEST_CASE("conditional inversions round trip, including deep survival levels") {
    const Copula cs[] = {Copula::gumbel(2.0), Copula::gumbel(4.0), Copula::fgm(-0.8),
                         Copula::fgm(0.7), Copula::independence()};
    for (const auto& c : cs)
        for (double u : {0.5, 0.9, 0.99}) {
            for (double v : kGrid)
                CHECK(c.cond_tail_quantile(u, c.cond_tail_cdf(u, v)) ==
                      doctest::Approx(v).epsilon(1e-9));
            for (double sv : {0.3, 1e-6, 1e-12}) {
                const double p = c.cond_tail_sf(u, sv);
                const double back = c.cond_tail_sf_inv(u, p);
                CHECK(std::fabs(std::log(back) - std::log(sv)) <
                      1e-8 * std::max(1.0, std::fabs(std::log(sv))));
            }
        }
}

TEST_CASE("concordance order verdicts") {
    CHECK(concordance_leq(Copula::independence(), Copula::gumbel(2.0), 64).holds);
    CHECK(concordance_leq(Copula::gumbel(2.0), Copula::gumbel(4.0), 64).holds);
    CHECK(concordance_leq(Copula::fgm(-0.5), Copula::independence(), 64).holds);
    CHECK(concordance_leq(Copula::fgm(-0.9), Copula::fgm(-0.3), 64).holds);
    CHECK(concordance_leq(Copula::gumbel(3.0), Copula::comonotonic(), 64).holds);

    const auto bad = concordance_leq(Copula::gumbel(4.0), Copula::gumbel(2.0), 64);
    CHECK_FALSE(bad.holds);
    CHECK(bad.margin < 0.0);
    REQUIRE(bad.first_violation.has_value());
    CHECK(bad.first_violation->lhs > bad.first_violation->rhs);
}

TEST_CASE("dependence notions per family") {
    const auto g = Copula::gumbel(2.0);
    CHECK(check_dependence(g, Dependence::PQD, 32).holds);
    CHECK(check_dependence(g, Dependence::RTI_V_in_U, 32).holds);
    CHECK(check_dependence(g, Dependence::SI_V_in_U, 32).holds);
    CHECK(check_dependence(g, Dependence::TP2, 32).holds);
    CHECK(check_dependence(g, Dependence::PDS, 32).holds);
    CHECK_FALSE(check_dependence(g, Dependence::NQD, 32).holds);
    CHECK_FALSE(check_dependence(g, Dependence::RR2, 32).holds);
    CHECK_FALSE(check_dependence(g, Dependence::SD_V_in_U, 32).holds);

    const auto f = Copula::fgm(-0.8);
    CHECK(check_dependence(f, Dependence::NQD, 32).holds);
    CHECK(check_dependence(f, Dependence::RTD_V_in_U, 32).holds);
    CHECK(check_dependence(f, Dependence::SD_V_in_U, 32).holds);
    CHECK(check_dependence(f, Dependence::RR2, 32).holds);
    CHECK(check_dependence(f, Dependence::NDS, 32).holds);
    CHECK_FALSE(check_dependence(f, Dependence::PQD, 32).holds);

    // independence sits on every boundary
    const auto ind = Copula::independence();
    for (auto d : {Dependence::PQD, Dependence::NQD, Dependence::RTI_V_in_U,
                   Dependence::RTD_V_in_U, Dependence::SI_V_in_U,
                   Dependence::SD_V_in_U, Dependence::TP2, Dependence::RR2,
                   Dependence::PDS, Dependence::NDS})
        CHECK(check_dependence(ind, d, 32).holds);

    CHECK(check_dependence(Copula::comonotonic(), Dependence::PQD, 32).holds);
    CHECK(check_dependence(Copula::comonotonic(), Dependence::TP2, 32).holds);
}

TEST_CASE("copula parsing") {
    CHECK(Copula::parse("gumbel:2").param() == 2.0);
    CHECK(Copula::parse("fgm:-0.8").param() == -0.8);
    CHECK(Copula::parse("indep").family() == CopulaFamily::independence);
    CHECK(Copula::parse("comono").family() == CopulaFamily::comonotonic);
    CHECK(Copula::parse("gumbel:2").to_string() == "gumbel:2");
    CHECK(Copula::parse("indep").to_string() == "indep");

    CHECK_THROWS_AS(Copula::parse("gumbel:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Copula::parse("fgm:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Copula::parse("clayton:2"), std::invalid_argument);
    CHECK_THROWS_AS(Copula::parse("gumbel"), std::invalid_argument);
    CHECK_THROWS_AS(Copula::parse("indep:1"), std::invalid_argument);
}

TEST_CASE("dependence name parsing") {
    CHECK(parse_dependence("PQD") == Dependence::PQD);
    CHECK(parse_dependence("RTI") == Dependence::RTI_V_in_U);
    CHECK(parse_dependence("RTD") == Dependence::RTD_V_in_U);
    CHECK(parse_dependence("SI") == Dependence::SI_V_in_U);
    CHECK(parse_dependence("SD") == Dependence::SD_V_in_U);
    CHECK(parse_dependence("TP2") == Dependence::TP2);
    CHECK(parse_dependence("PDS") == Dependence::PDS);
    CHECK(parse_dependence("NDS") == Dependence::NDS);
    CHECK_THROWS_AS(parse_dependence("XYZ"), std::invalid_argument);
}
