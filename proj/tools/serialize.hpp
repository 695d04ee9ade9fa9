#pragma once
#include <string>
#include <vector>

#include "json.hpp"

#include "corisk/oracle.hpp"
#include "corisk/riskcore.hpp"
#include "corisk/verdict.hpp"

namespace corisk::io {

// Shortest decimal string that parses back to exactly the same double.
std::string fmt_double(double v);

// Rectangular numeric table: one header per column, rows of equal width.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    void add_row(std::vector<double> row);
};

// Outcome of one qualitative figure check; margin is the smallest signed
// slack observed (negative = violated).
struct CheckResult {
    std::string name;
    bool pass = false;
    double margin = 0.0;
};

std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);
nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const OrderVerdict& v);
nlohmann::json to_json(const McEstimate& e);
// `measure` names the functional the result came from (e.g. "cod", "delta").
nlohmann::json to_json(const RiskResult& r, const std::string& measure);

} // namespace corisk::io
