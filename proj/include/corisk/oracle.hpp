#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "corisk/riskcore.hpp"

namespace corisk {

// Deterministic splitmix64 stream; (seed, stream) pairs give decorrelated,
// bit-reproducible substreams (one per Monte Carlo batch).
class SplitMix64 {
  public:
    SplitMix64(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_unit(); // uniform, strictly inside (0,1)

  private:
    std::uint64_t state_;
};

struct McEstimate {
    double mean = 0.0;
    double stderr_est = 0.0; // batch-means standard error
    long n_accepted = 0;
    long n_total = 0;
    std::uint64_t seed = 0;
    int batches = 0;
};

// n draws from the copula via conditional inversion. The Gumbel conditional
// is inverted against a central-difference derivative of the plain cdf
// (step 1e-6, tolerance 1e-9): deliberately independent of the analytic
// conditional machinery it is used to validate.
std::vector<std::pair<double, double>> sample_pairs(const Copula& c, long n,
                                                    std::uint64_t seed);

// Rejection estimate of the conditional distortion risk: keep draws with
// u > u_g (v sampled only for accepted u), apply the empirical distortion
// L-statistic per batch, and aggregate batch means. Throws
// insufficient_acceptance when fewer than 100 draws survive overall or any
// batch ends up empty.
McEstimate mc_cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                     long n, std::uint64_t seed, int batches);
McEstimate mc_cod(const BivariateModel& model, const Distortion& g,
                  const Distortion& h, long n, std::uint64_t seed, int batches);

} // namespace corisk
