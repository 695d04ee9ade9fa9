#include "corisk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corisk/errors.hpp"
#include "corisk/numerics.hpp"

namespace corisk {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                   mix64(stream ^ 0x5851F42D4C957F2DULL))) {}

std::uint64_t SplitMix64::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

double SplitMix64::next_unit() {
    // 53 random bits centred in the cell: result lies strictly inside (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

// Inverse of w = P(V <= v | U = u) for one copula family. The Gumbel branch
// differentiates the cdf numerically so this path shares no conditional code
// with the analytic evaluator it cross-checks.
double conditional_draw(const Copula& c, double u, double w) {
    switch (c.family()) {
    case CopulaFamily::independence:
        return w;
    case CopulaFamily::comonotonic:
        return u;
    case CopulaFamily::fgm: {
        const double A = c.param() * (1.0 - 2.0 * u);
        if (std::fabs(A) < 1e-12) return w;
        // A v^2 - (1+A) v + w = 0, stable root in [0,1]
        const double disc = (1.0 + A) * (1.0 + A) - 4.0 * A * w;
        return 2.0 * w / ((1.0 + A) + std::sqrt(disc));
    }
    case CopulaFamily::gumbel: {
        constexpr double eps = 1e-6;
        // keep the stencil inside [0,1]; the centre shift only affects draws
        // within eps of the corners
        const double uc = std::min(std::max(u, eps), 1.0 - eps);
        auto dcdu = [&](double v) {
            return (c.cdf(uc + eps, v) - c.cdf(uc - eps, v)) / (2.0 * eps);
        };
        auto f = [&](double v) { return dcdu(v) - w; };
        const double lo = 1e-12, hi = 1.0 - 1e-12;
        const double flo = f(lo), fhi = f(hi);
        if ((flo > 0.0) == (fhi > 0.0))
            // derivative noise at an extreme w: fall back to the nearer end
            return std::fabs(flo) < std::fabs(fhi) ? lo : hi;
        return brent_root(f, lo, hi, flo, fhi, 1e-9, 0.0);
    }
    }
    return w;
}

} // namespace

std::vector<std::pair<double, double>> sample_pairs(const Copula& c, long n,
                                                    std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_pairs: n must be positive");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n));
    SplitMix64 rng(seed, 0);
    for (long i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        const double w = rng.next_unit();
        out.emplace_back(u, conditional_draw(c, u, w));
    }
    return out;
}

McEstimate mc_cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                     long n, std::uint64_t seed, int batches) {
    if (!(u_g >= 0.0 && u_g < 1.0))
        throw std::invalid_argument("mc_cod_at: u_g must lie in [0,1)");
    if (n < 1) throw std::invalid_argument("mc_cod_at: n must be positive");
    if (batches < 2 || static_cast<long>(batches) > n)
        throw std::invalid_argument("mc_cod_at: need 2 <= batches <= n");

    const Distortion hbar = h.dual();
    std::vector<double> batch_means;
    batch_means.reserve(static_cast<std::size_t>(batches));
    long accepted_total = 0;
    std::vector<double> ys;

    for (int b = 0; b < batches; ++b) {
        const long m_draws = n / batches + (b < n % batches ? 1 : 0);
        SplitMix64 rng(seed, static_cast<std::uint64_t>(b));
        ys.clear();
        for (long i = 0; i < m_draws; ++i) {
            const double u = rng.next_unit();
            if (u <= u_g) continue;
            const double w = rng.next_unit();
            const double v = conditional_draw(model.copula, u, w);
            ys.push_back(model.y.quantile_ps(v, 1.0 - v));
        }
        if (ys.empty())
            throw insufficient_acceptance("mc_cod_at: empty batch after rejection");
        accepted_total += static_cast<long>(ys.size());
        std::sort(ys.begin(), ys.end());
        // empirical distortion L-statistic with weights from the dual
        const double m = static_cast<double>(ys.size());
        double est = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double cur = hbar.eval(static_cast<double>(i + 1) / m);
            est += ys[i] * (cur - prev);
            prev = cur;
        }
        batch_means.push_back(est);
    }
    if (accepted_total < 100)
        throw insufficient_acceptance("mc_cod_at: fewer than 100 accepted draws");

    McEstimate out;
    out.batches = batches;
    out.seed = seed;
    out.n_total = n;
    out.n_accepted = accepted_total;
    double mean = 0.0;
    for (double v : batch_means) mean += v;
    mean /= batch_means.size();
    double ss = 0.0;
    for (double v : batch_means) ss += (v - mean) * (v - mean);
    out.mean = mean;
    out.stderr_est = std::sqrt(ss / (batch_means.size() - 1)) /
                     std::sqrt(static_cast<double>(batch_means.size()));
    return out;
}

McEstimate mc_cod(const BivariateModel& model, const Distortion& g, const Distortion& h,
                  long n, std::uint64_t seed, int batches) {
    return mc_cod_at(model, threshold_quantile(g, model.x), h, n, seed, batches);
}

} // namespace corisk
