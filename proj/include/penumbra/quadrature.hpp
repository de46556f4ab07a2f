#ifndef PENUMBRA_QUADRATURE_HPP
#define PENUMBRA_QUADRATURE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "penumbra/types.hpp"

namespace penumbra {

/// Rotation angles (radians) for deformed integration tails, keyed by tail
/// identity.  Angles must stay inside each integrand's decay sector and away
/// from the pole ray arg xi = pi/3.
struct TailRotation {
    double left_airy = kPi / 12.0;   // w1(xi-nu)-dominated left tails, into C^-
    double left_ratio = kPi / 12.0;  // H'/w1'-dominated left tails, into C^+
    double right = kPi / 12.0;       // right tails, off the real axis

    void validate() const;
};

struct QuadratureConfig {
    double rel_tol = 1.0e-8;
    double abs_floor = 1.0e-12;
    int max_subdivisions = 2000;  // adaptive refinements beyond the oscillation mesh
    TailRotation tail_rotation;
    double tail_truncation_bound = 1.0e-2;  // tails cut where bound < abs_floor * this
    std::ostream* trace = nullptr;          // JSON-lines diagnostic stream, optional
};

struct AttenuationResult {
    Complex value{0.0, 0.0};
    double est_error = 0.0;
    long evaluations = 0;
    std::string contour_descriptor;
};

/// One straight contour piece xi(t) = origin + t * dir, t in [0, length].
struct ContourLeg {
    Complex origin{0.0, 0.0};
    Complex dir{1.0, 0.0};  // unit
    double length = 0.0;
    std::string label;
    std::function<Complex(Complex)> integrand;        // value at xi
    std::function<double(double)> phase_rate;         // local phase-rate bound at t
    double tail_remainder = 0.0;                      // analytic bound on the cut tail
    bool check_poles = false;                         // leg involves 1/w1'
    double phase_scale = 1.0;  // max |exponent| reached; sets the rounding floor
};

struct ContourIntegral {
    Complex value{0.0, 0.0};
    double est_error = 0.0;
    long evaluations = 0;
    int panels = 0;
    double l1 = 0.0;  // integral of |f|, for the rounding-noise floor
};

/// Adaptive Gauss-Kronrod 7-15 over all legs: oscillation-budgeted initial
/// mesh, worst-panel refinement until the combined error estimate meets
/// max(abs_floor, rel_tol * |value|).  Throws NumericsError("tolerance-not-met
/// ...") when the subdivision budget is exhausted first, and a pole-proximity
/// error when a flagged leg passes within 0.1 of a zero of w1'.
ContourIntegral integrate_contour(const std::vector<ContourLeg>& legs,
                                  const QuadratureConfig& cfg);

/// Doubling search for the first t with envelope(t) <= cutoff (envelope must
/// eventually decay).  Throws NumericsError if not reached before t_max.
double truncate_where(const std::function<double(double)>& envelope, double cutoff,
                      double t_min, double t_max);

}  // namespace penumbra

#endif
