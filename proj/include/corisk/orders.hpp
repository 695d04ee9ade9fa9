#pragma once
#include <string_view>

#include "corisk/marginal.hpp"
#include "corisk/verdict.hpp"

namespace corisk {

enum class Order { st, hr, lr, icx, icv, disp, ew };

Order parse_order(std::string_view text);
const char* order_name(Order o);

// Grid verification that x precedes y in the given stochastic order.
//  st / hr / lr  : checked on the union of both quantile grids (support-
//                  adaptive); hr/lr via monotonicity of log-survival/log-pdf
//                  differences.
//  icx / icv / ew: upper/lower partial quantile integrals via the closed-form
//                  integrated tail; pointwise comparison on a u-grid.
//  disp          : monotonicity of the quantile gap on a u-grid.
// Slack tolerance 1e-9.
OrderVerdict check_order(const Marginal& x, const Marginal& y, Order o,
                         int grid_size = 2000);

} // namespace corisk
