#pragma once
#include <limits>
#include <optional>

namespace corisk {

struct Violation {
    double where1 = 0.0; // grid coordinate of the first violation
    double where2 = std::numeric_limits<double>::quiet_NaN(); // second coordinate, if 2-D
    double lhs = 0.0;
    double rhs = 0.0;
};

// Result of a grid-based property check: margin is the smallest signed slack
// seen (negative = violated); first_violation pinpoints the earliest failure.
struct OrderVerdict {
    bool holds = true;
    double margin = std::numeric_limits<double>::infinity();
    std::optional<Violation> first_violation;
};

} // namespace corisk
