#ifndef PENUMBRA_GEOMETRY_HPP
#define PENUMBRA_GEOMETRY_HPP

#include <string>

#include "penumbra/types.hpp"

namespace penumbra {

/// Scenario parameters: wavenumber k, curvature jump h, and the two
/// dimensionless cutoffs realizing ">> 1" and "<< 1".
struct ProblemParams {
    double k = 0.0;
    double h = 0.0;
    double big_threshold = 3.0;
    double small_threshold = 1.0 / 3.0;

    double ratio() const { return k / h; }  // the large parameter k/h

    /// Throws DomainError unless k > 0, h > 0, 0 < small < 1 < big and
    /// k/h >= big_threshold^3.
    void validate() const;
};

struct SurfaceCoords {
    double s = 0.0;  // signed arc length from the curvature jump
    double n = 0.0;  // normal distance, n >= 0
};

struct StretchedCoords {
    double sigma = 0.0;
    double nu = 0.0;  // nu >= 0
};

struct PhysicalPoint {
    double x = 0.0;
    double y = 0.0;

    double r() const { return std::hypot(x, y); }
    double phi() const { return std::atan2(y, x); }
};

enum class RegionLabel {
    D1_core,
    D2_illuminated_far,
    D3_illuminated_near,
    D4_penumbra,
    D5_shadow_near,
    D6_deep_shadow,
    OutsideValidity,
};

std::string to_string(RegionLabel r);

/// Heaviside step with the closed left branch: theta(0) = 0.
inline double heaviside(double x) { return x > 0.0 ? 1.0 : 0.0; }

/// Contour curvature h * theta(x).
double curvature(double x, const ProblemParams& params);

/// sigma = (h^2 k / 2)^{1/3} s,  nu = (2 h k^2)^{1/3} n.  Rejects n < 0.
StretchedCoords stretch(const SurfaceCoords& p, const ProblemParams& params);

/// Exact inverse of stretch.
SurfaceCoords unstretch(const StretchedCoords& q, const ProblemParams& params);

/// Cartesian coordinates from (s, n): truncated expansions, main terms only,
/// plus the relative remainder bounds of the dropped terms.
struct CartesianResult {
    PhysicalPoint point;
    double remainder_x_rel = 0.0;
    double remainder_y_rel = 0.0;
    bool within_validity = true;  // both bounds <= small_threshold
};
CartesianResult cartesian_from_surface(const SurfaceCoords& p, const ProblemParams& params);

/// As above but throws DomainError when the remainder bounds exceed
/// small_threshold.
PhysicalPoint cartesian_from_surface_strict(const SurfaceCoords& p, const ProblemParams& params);

/// Approximate inverse of cartesian_from_surface (fixed-point on the main
/// terms; exact for x <= 0).
SurfaceCoords surface_from_cartesian(const PhysicalPoint& pt, const ProblemParams& params);

/// Main terms of k(r - s) and phi in stretched coordinates, with bounds on
/// the dropped remainder terms reported alongside.  Requires sigma != 0.
struct PolarRelations {
    double k_r_minus_s = 0.0;
    double phi = 0.0;
    double k_r_minus_s_remainder = 0.0;
    double phi_remainder = 0.0;
};
PolarRelations polar_relations(const StretchedCoords& q, const ProblemParams& params);

/// sigma <= c (k/h)^{2/15} and nu <= c (k/h)^{4/15}, c = small_threshold.
struct ValidityCheck {
    bool valid = false;
    double sigma_limit = 0.0;
    double nu_limit = 0.0;
    double sigma_margin = 0.0;  // limit - sigma
    double nu_margin = 0.0;
};
ValidityCheck validity_check(const StretchedCoords& q, const ProblemParams& params);

/// Membership in each zone by its full defining inequalities (zones overlap
/// near common boundaries).
struct RegionMembership {
    bool valid = false;           // validity_check passed
    bool guaranteed_large = false;  // nu + sigma >= big_threshold
    bool d2 = false;
    bool d3 = false;
    bool d4 = false;
    bool d5 = false;
    bool d6 = false;
};
RegionMembership region_membership(const StretchedCoords& q, const ProblemParams& params);

/// Deterministic single label with precedence D2, D6, D4, D3, D5, D1.
RegionLabel region_classify(const StretchedCoords& q, const ProblemParams& params);

}  // namespace penumbra

#endif
