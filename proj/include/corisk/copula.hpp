#pragma once
#include <string>
#include <string_view>

#include "corisk/verdict.hpp"

namespace corisk {

enum class CopulaFamily { gumbel, fgm, independence, comonotonic };

// Bivariate copula with numerically stable tail machinery. All built-in
// families are exchangeable. The survival coordinate sv = 1-v is carried
// explicitly through joint_tail_sv / cond_tail_sf / cond_tail_sf_inv so that
// upper-tail conditional levels keep full relative precision.
class Copula {
  public:
    static Copula gumbel(double theta); // theta >= 1
    static Copula fgm(double alpha);    // |alpha| <= 1
    static Copula independence();
    static Copula comonotonic();
    // "gumbel:2", "fgm:-0.8", "indep", "comono"
    static Copula parse(std::string_view text);

    double cdf(double u, double v) const;

    // P(U > u, V > 1 - sv); cancellation-free in sv.
    double joint_tail_sv(double u, double sv) const;
    double joint_tail(double u, double v) const { return joint_tail_sv(u, 1.0 - v); }

    // F_{V|U>u}(v) = (v - C(u,v))/(1-u), stable for small v; u in [0,1).
    double cond_tail_cdf(double u, double v) const;
    // P(V > 1-sv | U > u) = joint_tail_sv(u, sv)/(1-u).
    double cond_tail_sf(double u, double sv) const;

    // Inverse of cond_tail_cdf in v (accurate for small p); p in (0,1).
    double cond_tail_quantile(double u, double p) const;
    // Inverse of cond_tail_sf in sv (accurate for small sp); sp in (0,1).
    double cond_tail_sf_inv(double u, double sp) const;

    CopulaFamily family() const { return family_; }
    double param() const { return param_; }
    std::string to_string() const;

  private:
    Copula(CopulaFamily f, double p) : family_(f), param_(p) {}
    CopulaFamily family_;
    double param_;
};

// Pointwise concordance order: c1(u,v) <= c2(u,v) on the interior grid
// (i/(g+1), j/(g+1)); slack tolerance 1e-12.
OrderVerdict concordance_leq(const Copula& c1, const Copula& c2, int grid_size);

enum class Dependence {
    PQD,        // C(u,v) >= uv
    NQD,        // C(u,v) <= uv
    RTI_V_in_U, // P(V>v | U>u) nondecreasing in u
    RTD_V_in_U, // P(V>v | U>u) nonincreasing in u
    SI_V_in_U,  // P(V>v | U=u) nondecreasing in u
    SD_V_in_U,  // P(V>v | U=u) nonincreasing in u
    TP2,        // C log-supermodular
    RR2,        // C log-submodular
    PDS,        // SI in both directions
    NDS,        // SD in both directions
};

Dependence parse_dependence(std::string_view text);
const char* dependence_name(Dependence d);

// Grid verification of a dependence property. Exact-formula checks (PQD, NQD,
// RTI, RTD, TP2, RR2) use tolerance 1e-12; checks based on central differences
// of the conditional cdf (SI, SD, PDS, NDS; step 1/(4*grid_size)) use 1e-8.
OrderVerdict check_dependence(const Copula& c, Dependence notion, int grid_size);

} // namespace corisk
