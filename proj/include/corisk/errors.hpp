#pragma once
#include <stdexcept>

namespace corisk {

// Two independent evaluation routes disagreed beyond tolerance, or an
// integral / root-find failed to converge within its budget.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The conditioning event {X > threshold} carries (numerically) zero mass.
struct degenerate_conditioning : std::domain_error {
    using std::domain_error::domain_error;
};

// Monte Carlo rejection kept too few points to form an estimate.
struct insufficient_acceptance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace corisk
