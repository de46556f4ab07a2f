#include "penumbra/geometry.hpp"

#include <cmath>

namespace penumbra {

void ProblemParams::validate() const {
    if (!(k > 0.0)) throw DomainError("ProblemParams: k must be positive");
    if (!(h > 0.0)) throw DomainError("ProblemParams: h must be positive (convex side only)");
    if (!(small_threshold > 0.0 && small_threshold < 1.0 && big_threshold > 1.0))
        throw DomainError("ProblemParams: need 0 < small_threshold < 1 < big_threshold");
    if (!(k / h >= big_threshold * big_threshold * big_threshold))
        throw DomainError("ProblemParams: k/h too small for (k/h)^{1/3} to qualify as large");
}

std::string to_string(RegionLabel r) {
    switch (r) {
        case RegionLabel::D1_core: return "D1_core";
        case RegionLabel::D2_illuminated_far: return "D2_illuminated_far";
        case RegionLabel::D3_illuminated_near: return "D3_illuminated_near";
        case RegionLabel::D4_penumbra: return "D4_penumbra";
        case RegionLabel::D5_shadow_near: return "D5_shadow_near";
        case RegionLabel::D6_deep_shadow: return "D6_deep_shadow";
        case RegionLabel::OutsideValidity: return "OutsideValidity";
    }
    return "?";
}

double curvature(double x, const ProblemParams& params) {
    return params.h * heaviside(x);
}

StretchedCoords stretch(const SurfaceCoords& p, const ProblemParams& params) {
    if (p.n < 0.0) throw DomainError("stretch: n must be >= 0");
    const double cs = std::cbrt(params.h * params.h * params.k / 2.0);
    const double cn = std::cbrt(2.0 * params.h * params.k * params.k);
    return {cs * p.s, cn * p.n};
}

SurfaceCoords unstretch(const StretchedCoords& q, const ProblemParams& params) {
    const double cs = std::cbrt(params.h * params.h * params.k / 2.0);
    const double cn = std::cbrt(2.0 * params.h * params.k * params.k);
    return {q.sigma / cs, q.nu / cn};
}

CartesianResult cartesian_from_surface(const SurfaceCoords& p, const ProblemParams& params) {
    const double h = params.h;
    const double th = heaviside(p.s);
    CartesianResult r;
    r.point.x = p.s + th * (h * p.n * p.s - h * h * p.s * p.s * p.s / 6.0);
    r.point.y = p.n - th * (h * p.s * p.s / 2.0);
    const double s3 = std::abs(p.s) * p.s * p.s;
    const double mix = p.n + h * p.s * p.s;
    const double scale = std::abs(p.s) + p.n + h * p.s * p.s + 1.0e-300;
    r.remainder_x_rel = th * h * h * h * s3 * mix / scale;
    r.remainder_y_rel = th * h * h * p.s * p.s * mix / scale;
    r.within_validity = std::max(r.remainder_x_rel, r.remainder_y_rel) <= params.small_threshold;
    return r;
}

PhysicalPoint cartesian_from_surface_strict(const SurfaceCoords& p, const ProblemParams& params) {
    const CartesianResult r = cartesian_from_surface(p, params);
    if (!r.within_validity)
        throw DomainError("cartesian_from_surface: expansion remainder exceeds small_threshold");
    return r.point;
}

SurfaceCoords surface_from_cartesian(const PhysicalPoint& pt, const ProblemParams& params) {
    if (pt.x <= 0.0) return {pt.x, pt.y};  // flat side: exact
    const double h = params.h;
    double s = pt.x, n = pt.y;
    for (int it = 0; it < 25; ++it) {
        const double ns = s;
        s = pt.x - heaviside(ns) * (h * n * ns - h * h * ns * ns * ns / 6.0);
        n = pt.y + heaviside(s) * (h * s * s / 2.0);
        if (std::abs(s - ns) < 1.0e-15 * (std::abs(s) + 1.0e-30)) break;
    }
    return {s, n};
}

PolarRelations polar_relations(const StretchedCoords& q, const ProblemParams& params) {
    if (q.sigma == 0.0) throw DomainError("polar_relations: singular at sigma = 0");
    const double th = heaviside(q.sigma);
    const double sg = q.sigma, nu = q.nu;
    const double hk23 = std::pow(params.h / params.k, 2.0 / 3.0);
    const double hk = params.h / params.k;
    PolarRelations r;
    r.k_r_minus_s = 0.5 * (nu * nu / (2.0 * sg) + th * (nu * sg - sg * sg * sg / 6.0));
    r.phi = std::cbrt(2.0 * params.h / params.k) * (nu - th * sg * sg) / (2.0 * sg);
    const double s2 = sg * sg;
    r.k_r_minus_s_remainder =
        hk23 * (std::abs(sg) * s2 * (nu + s2) +
                std::abs(sg) * (nu - s2 / 3.0) * (nu - s2 / 3.0));
    r.phi_remainder = hk * (std::abs(sg) * (nu + s2) + (nu - s2) * (nu - s2) / std::abs(sg));
    return r;
}

ValidityCheck validity_check(const StretchedCoords& q, const ProblemParams& params) {
    const double c = params.small_threshold;
    ValidityCheck v;
    v.sigma_limit = c * std::pow(params.ratio(), 2.0 / 15.0);
    v.nu_limit = c * std::pow(params.ratio(), 4.0 / 15.0);
    v.sigma_margin = v.sigma_limit - q.sigma;
    v.nu_margin = v.nu_limit - q.nu;
    v.valid = (q.sigma <= v.sigma_limit) && (q.nu <= v.nu_limit) && (q.nu >= 0.0);
    return v;
}

RegionMembership region_membership(const StretchedCoords& q, const ProblemParams& params) {
    const double B = params.big_threshold;
    const double s = params.small_threshold;
    const double sg = q.sigma, nu = q.nu;
    RegionMembership m;
    m.valid = validity_check(q, params).valid;
    m.guaranteed_large = (nu + sg >= B);
    if (!m.valid || !m.guaranteed_large) return m;
    const double rt = std::sqrt(nu);
    const double gap = rt - sg;  // positive on the illuminated side
    m.d2 = (nu >= B) && (nu - sg * sg >= B * sg);
    m.d6 = (sg >= B) && (sg * sg - nu >= B * sg);
    m.d4 = (nu >= B) && (std::abs(gap) <= s);
    const bool close = (nu >= B) && (std::abs(gap) <= s * std::pow(nu, 0.125));
    const bool not_fresnel = std::pow(nu, 0.25) * std::abs(gap) >= B;
    m.d3 = close && not_fresnel && (sg < rt);
    m.d5 = close && not_fresnel && (sg > rt);
    return m;
}

RegionLabel region_classify(const StretchedCoords& q, const ProblemParams& params) {
    const RegionMembership m = region_membership(q, params);
    if (!m.valid) return RegionLabel::OutsideValidity;
    if (!m.guaranteed_large) return RegionLabel::D1_core;
    if (m.d2) return RegionLabel::D2_illuminated_far;
    if (m.d6) return RegionLabel::D6_deep_shadow;
    if (m.d4) return RegionLabel::D4_penumbra;
    if (m.d3) return RegionLabel::D3_illuminated_near;
    if (m.d5) return RegionLabel::D5_shadow_near;
    return RegionLabel::D1_core;
}

}  // namespace penumbra
