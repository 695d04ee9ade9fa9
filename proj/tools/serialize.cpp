#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace corisk::io {

std::string fmt_double(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v || std::isnan(v)) break;
    }
    return buf;
}

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("table row width does not match header");
    rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += t.columns[j];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += fmt_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& t) {
    return {{"columns", t.columns}, {"rows", t.rows}};
}

nlohmann::json to_json(const CheckResult& c) {
    return {{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}};
}

nlohmann::json to_json(const OrderVerdict& v) {
    nlohmann::json j{{"holds", v.holds}, {"margin", v.margin}};
    if (v.first_violation) {
        const Violation& w = *v.first_violation;
        nlohmann::json jv{{"where", w.where1}, {"lhs", w.lhs}, {"rhs", w.rhs}};
        if (std::isfinite(w.where2)) jv["where2"] = w.where2;
        j["first_violation"] = jv;
    }
    return j;
}

nlohmann::json to_json(const McEstimate& e) {
    return {{"mean", e.mean},         {"stderr", e.stderr_est},
            {"n_accepted", e.n_accepted}, {"n_total", e.n_total},
            {"seed", e.seed},         {"batches", e.batches}};
}

nlohmann::json to_json(const RiskResult& r, const std::string& measure) {
    nlohmann::json j{{"measure", measure},
                     {"value", r.value},
                     {"err_estimate", r.err_estimate},
                     {"n_rootfinds", r.n_rootfinds}};
    if (std::isfinite(r.u_g)) j["u_g"] = r.u_g;
    if (std::isfinite(r.u_g2)) j["u_g2"] = r.u_g2;
    if (std::isfinite(r.term1)) j["term1"] = r.term1;
    if (std::isfinite(r.term2)) j["term2"] = r.term2;
    return j;
}

} // namespace corisk::io
