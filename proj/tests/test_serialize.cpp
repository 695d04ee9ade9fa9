#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "serialize.hpp"

using namespace corisk;
using corisk::io::Table;

TEST_SUITE("serialize") {

TEST_CASE("double formatting: shortest string that round-trips bitwise") {
    const double vals[] = {0.5,
                           1.0,
                           0.1,
                           1e-300,
                           6.02214076e23,
                           -0.0,
                           3.141592653589793,
                           1.0 / 3.0,
                           2.2250738585072014e-308,
                           -123456.789,
                           std::numeric_limits<double>::max()};
    for (double v : vals) {
        const std::string s = io::fmt_double(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
        // sign of zero must survive as well
        if (v == 0.0) CHECK(std::signbit(back) == std::signbit(v));
    }
    CHECK(io::fmt_double(0.5) == "0.5");
    CHECK(io::fmt_double(1.0) == "1");
    CHECK(io::fmt_double(0.1) == "0.1");
}

TEST_CASE("table: row width is enforced") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.0, 2.0});
    CHECK(t.rows.size() == 1);
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("csv: header plus round-trippable rows") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.0, 0.5});
    CHECK(io::to_csv(t) == "a,b\n1,0.5\n");

    Table empty;
    empty.columns = {"x"};
    CHECK(io::to_csv(empty) == "x\n");

    Table deep;
    deep.columns = {"v"};
    deep.add_row({1.0 / 3.0});
    const std::string csv = io::to_csv(deep);
    const auto nl = csv.find('\n');
    const std::string cell = csv.substr(nl + 1, csv.size() - nl - 2);
    CHECK(std::strtod(cell.c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("json: key sets per payload type") {
    Table t;
    t.columns = {"a"};
    t.add_row({2.5});
    auto jt = io::to_json(t);
    CHECK(jt["columns"][0] == "a");
    CHECK(jt["rows"][0][0] == 2.5);

    io::CheckResult c{"monotone", true, 0.25};
    auto jc = io::to_json(c);
    CHECK(jc["name"] == "monotone");
    CHECK(jc["pass"] == true);
    CHECK(jc["margin"] == 0.25);

    OrderVerdict ok{true, 0.1, std::nullopt};
    auto jok = io::to_json(ok);
    CHECK(jok["holds"] == true);
    CHECK_FALSE(jok.contains("first_violation"));

    OrderVerdict bad{false, -0.2,
                     Violation{0.3, std::numeric_limits<double>::quiet_NaN(), 1.0, 0.8}};
    auto jbad = io::to_json(bad);
    CHECK(jbad["holds"] == false);
    CHECK(jbad["first_violation"]["where"] == 0.3);
    CHECK(jbad["first_violation"]["lhs"] == 1.0);
    CHECK(jbad["first_violation"]["rhs"] == 0.8);
    CHECK_FALSE(jbad["first_violation"].contains("where2"));

    McEstimate e;
    e.mean = 1.5;
    e.stderr_est = 0.01;
    e.n_accepted = 900;
    e.n_total = 1000;
    e.seed = 7;
    e.batches = 10;
    auto je = io::to_json(e);
    CHECK(je["mean"] == 1.5);
    CHECK(je["stderr"] == 0.01);
    CHECK(je["n_accepted"] == 900);
    CHECK(je["n_total"] == 1000);
    CHECK(je["seed"] == 7);
    CHECK(je["batches"] == 10);
}

TEST_CASE("json: risk result emits conditioning fields only when present") {
    RiskResult plain;
    plain.value = 2.0;
    plain.err_estimate = 1e-9;
    plain.n_rootfinds = 33;
    auto jp = io::to_json(plain, "dmeasure");
    CHECK(jp["measure"] == "dmeasure");
    CHECK(jp["value"] == 2.0);
    CHECK(jp["n_rootfinds"] == 33);
    CHECK_FALSE(jp.contains("u_g"));
    CHECK_FALSE(jp.contains("u_g2"));
    CHECK_FALSE(jp.contains("term1"));

    RiskResult full;
    full.value = 0.5;
    full.u_g = 0.95;
    full.u_g2 = 0.8;
    full.term1 = 1.5;
    full.term2 = 1.0;
    auto jf = io::to_json(full, "delta2");
    CHECK(jf["u_g"] == 0.95);
    CHECK(jf["u_g2"] == 0.8);
    CHECK(jf["term1"] == 1.5);
    CHECK(jf["term2"] == 1.0);
}

} // TEST_SUITE
