#pragma once
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "corisk/numerics.hpp"

namespace corisk {

enum class DistortionKind { var, es, power, dual_power, wang, identity };
enum class Continuity { left_continuous, right_continuous, continuous };
enum class Shape { concave, convex, linear, neither };

struct Atom {
    double location;
    double mass;
};

// One absolutely continuous piece of a measure on (lo,hi) with closed forms.
// p_of_w / sp_of_w map the accumulated-mass coordinate w in [0, mass] to the
// location p and its complement 1-p; sp_of_w never forms 1-p by subtraction
// where that would cancel, so survival masses down to ~1e-300 stay exact.
struct MeasureSegment {
    double lo, hi, mass;
    std::function<double(double)> density; // dm/dp at p in (lo,hi)
    std::function<double(double)> cum;     // mass of (lo, p]
    std::function<double(double)> p_of_w;
    std::function<double(double)> sp_of_w;
};

struct StieltjesMeasure {
    std::vector<Atom> atoms;
    std::vector<MeasureSegment> segments;

    double total_mass() const;

    // Integrate q(p, 1-p) against the measure. Segments are integrated in the
    // mass coordinate w (substitution, no clipping); q receives p and its
    // complement, the latter via the segment's cancellation-free form.
    QuadResult integrate(const std::function<double(double, double)>& q,
                         double abs_tol) const;
};

// Distortion function g: [0,1] -> [0,1], nondecreasing, g(0)=0, g(1)=1.
// Families: var (one-sided jump), es (capped ramp), power p^γ, dual-power
// 1-(1-p)^k (real k > 0), wang Φ(Φ⁻¹(p)+λ), identity. The dual is
// p -> 1 - g(1-p); power/dual-power/wang/identity dualize in closed form,
// var and es carry a `dualized` flag.
class Distortion {
  public:
    static Distortion var(double alpha);
    static Distortion es(double beta);
    static Distortion power(double gamma);
    static Distortion dual_power(double k);
    static Distortion wang(double lambda);
    static Distortion identity();
    // "var:0.95", "es:0.9", "power:2.5", "dualpower:3", "wang:0.5", "id"
    static Distortion parse(std::string_view text);

    double eval(double p) const;
    Distortion dual() const;

    DistortionKind kind() const { return kind_; }
    double param() const { return param_; }
    bool dualized() const { return dualized_; }

    Continuity continuity() const;
    Shape shape() const;
    bool is_concave() const; // concave or linear
    bool is_convex() const;  // convex or linear
    bool is_continuous() const { return continuity() == Continuity::continuous; }

    // Jump/kink locations of eval in (0,1) (integration split points).
    std::vector<double> breakpoints() const;

    // Measure of d(dual().eval): the measure against which quantiles are
    // integrated to evaluate the induced risk functional.
    StieltjesMeasure dual_measure() const;

    std::string to_string() const;

  private:
    Distortion(DistortionKind k, double a, bool dualized)
        : kind_(k), param_(a), dualized_(dualized) {}
    DistortionKind kind_;
    double param_;
    bool dualized_;
};

// True iff g1(p) <= g2(p) (within 1e-12) at every multiple of 1/grid_size.
bool dominates(const Distortion& g1, const Distortion& g2, int grid_size);

} // namespace corisk
