#include "penumbra/regions.hpp"

#include <cmath>
#include <sstream>

#include "penumbra/specfun.hpp"

namespace penumbra {

namespace {

const Complex kI{0.0, 1.0};

Complex pow32(Complex z) { return std::pow(z, 1.5); }  // principal

double re32(Complex z) {
    return std::pow(std::abs(z), 1.5) * std::cos(1.5 * std::arg(z));
}

double safe_exp_arg(double lg) { return std::exp(std::min(lg, 300.0)); }

void require(bool cond, const char* what) {
    if (!cond) throw DomainError(what);
}

// H'(xi)/w1'(xi) e^{i alpha xi}, the reduced background integrand.
Complex background_kernel(Complex xi, double alpha) {
    return (scorer_H_prime_scaled(xi) / w1_prime(xi))
        .times_exp(kI * alpha * xi)
        .value();
}

Complex g_background_kernel(Complex xi, double alpha) {
    return (scorer_I_prime_scaled(xi) / w1_prime(xi))
        .times_exp(kI * alpha * xi)
        .value();
}

std::function<double(double)> background_rate(Complex origin, Complex dir, double alpha) {
    return [=](double t) {
        const Complex xi = origin + t * dir;
        return std::abs(alpha) + 2.0 * std::sqrt(std::abs(xi) + 1.0) + 0.5;
    };
}

// (-inf, 0] leg of the background integrals: real segment plus a tail rotated
// into the upper half-plane, where H'/w1' decays superexponentially.
void append_background_left(std::vector<ContourLeg>& legs, double alpha,
                            const QuadratureConfig& cfg, int q_order, double nu_for_q) {
    const double t_break = 14.0;
    const double cutoff = cfg.abs_floor * cfg.tail_truncation_bound;
    auto weight = [=](Complex xi) -> Complex {
        if (q_order < 0) return {1.0, 0.0};
        return Complex(1.0, 0.0) + q_expansion(xi, nu_for_q, q_order);
    };

    ContourLeg core;
    core.origin = {-t_break, 0.0};
    core.dir = {1.0, 0.0};
    core.length = t_break;
    core.label = "bg-left-core";
    core.integrand = [=](Complex xi) { return background_kernel(xi, alpha) * weight(xi); };
    core.phase_rate = background_rate(core.origin, core.dir, alpha);
    core.check_poles = true;
    legs.push_back(core);

    ContourLeg tail;
    tail.origin = {-t_break, 0.0};
    tail.dir = std::polar(1.0, kPi - cfg.tail_rotation.left_ratio);
    tail.label = "bg-left-up";
    const Complex dir = tail.dir;
    auto env = [=](double t) {
        const Complex xi = tail.origin + t * dir;
        const double lg = 1.4 - 2.25 * std::log(std::abs(xi)) -
                          (2.0 / 3.0) * std::abs(re32(xi)) - alpha * xi.imag() +
                          std::log(1.0 + std::abs(weight(xi)));
        return lg < -800.0 ? 0.0 : safe_exp_arg(lg);
    };
    tail.length = truncate_where(env, cutoff, 1.0, 3.0e5);
    tail.tail_remainder = cutoff * 20.0;
    // outward parametrization reverses the (-inf -> 0) orientation
    tail.integrand = [=](Complex xi) { return -background_kernel(xi, alpha) * weight(xi); };
    tail.phase_rate = background_rate(tail.origin, tail.dir, alpha);
    tail.check_poles = true;
    legs.push_back(tail);
}

// [0, inf e^{i angle}) leg with the H'/w1' kernel (angle = -pi/3 for D3,
// +pi/4 for D5): the kernel tends to sqrt(pi) and e^{i alpha xi} decays.
void append_background_ray(std::vector<ContourLeg>& legs, double alpha, double angle,
                           const QuadratureConfig& cfg, int q_order, double nu_for_q) {
    const double cutoff = cfg.abs_floor * cfg.tail_truncation_bound;
    const Complex dir = std::polar(1.0, angle);
    const double decay = -(kI * alpha * dir).real();  // rate of |e^{i alpha xi}|
    require(decay > 0.0, "background ray: e^{i alpha xi} must decay along the ray");
    auto weight = [=](Complex xi) -> Complex {
        if (q_order < 0) return {1.0, 0.0};
        return Complex(1.0, 0.0) + q_expansion(xi, nu_for_q, q_order);
    };
    ContourLeg ray;
    ray.origin = {0.0, 0.0};
    ray.dir = dir;
    ray.label = "bg-ray";
    auto env = [=](double t) {
        const Complex xi = t * dir;
        return 2.6 * (1.0 + std::abs(weight(xi))) * std::exp(-decay * t);
    };
    ray.length = truncate_where(env, cutoff, 1.0, 3.0e5);
    ray.tail_remainder = cutoff * 20.0;
    ray.integrand = [=](Complex xi) { return background_kernel(xi, alpha) * weight(xi); };
    ray.phase_rate = background_rate(ray.origin, ray.dir, alpha);
    ray.check_poles = true;
    legs.push_back(ray);
}

double background_phase_scale(const std::vector<ContourLeg>& legs, double alpha) {
    double reach = 20.0;
    for (const auto& leg : legs) reach = std::max(reach, leg.length);
    return (4.0 / 3.0) * std::pow(reach, 1.5) + std::abs(alpha) * reach;
}

ScaledComplex background_prefactor(double nu) {
    // (e^{-i pi/4} / 2 pi) e^{i (2/3) nu^{3/2}} / nu^{1/4}
    const double amp = 1.0 / (2.0 * kPi * std::pow(nu, 0.25));
    return ScaledComplex::from(std::polar(amp, -kPi / 4.0))
        .times_exp(kI * (2.0 / 3.0) * std::pow(nu, 1.5));
}

AttenuationResult finish_region(const char* name, Complex value, double est, long evals,
                                std::string desc) {
    AttenuationResult r;
    r.value = value;
    r.est_error = est;
    r.evaluations = evals;
    r.contour_descriptor = std::move(desc);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NumericsError(std::string(name) + ": non-finite result");
    return r;
}

}  // namespace

Complex phase(PhaseId id, Complex xi, const StretchedCoords& q) {
    const double sg = q.sigma, nu = q.nu;
    const Complex nu_m_xi = Complex(nu, 0.0) - xi;
    switch (id) {
        case PhaseId::Psi1:
            return (2.0 / 3.0) * pow32(nu_m_xi) + sg * xi;
        case PhaseId::Psi2:
            return (2.0 / 3.0) * pow32(nu_m_xi) - (2.0 / 3.0) * pow32(-xi) + sg * xi;
        case PhaseId::Psi3:
            return kI * (sg * xi + (2.0 / 3.0) * pow32(nu_m_xi)) - (2.0 / 3.0) * pow32(xi);
        case PhaseId::Psi4:
            return kI * sg * xi - (2.0 / 3.0) * pow32(xi);
        case PhaseId::Psi5:
            return kI * sg * xi - (2.0 / 3.0) * (pow32(xi) - pow32(xi - nu));
        case PhaseId::Psi2_tilde:
            return -(2.0 / 3.0) * pow32(-xi) + (sg - std::sqrt(nu)) * xi;
    }
    throw DomainError("phase: unknown id");
}

Complex critical_point(PhaseId id, const StretchedCoords& q) {
    const double sg = q.sigma, nu = q.nu;
    switch (id) {
        case PhaseId::Psi1:
            return {nu - sg * sg, 0.0};
        case PhaseId::Psi2: {
            require(nu - sg * sg > 0.0 && sg > 0.0,
                    "critical_point(Psi2): requires nu > sigma^2 > 0 (zone D2 side)");
            const double m = (nu - sg * sg) / (2.0 * sg);
            return {-m * m, 0.0};
        }
        case PhaseId::Psi2_tilde: {
            require(std::sqrt(nu) - sg > 0.0,
                    "critical_point(Psi2_tilde): requires sigma < sqrt(nu)");
            const double m = std::sqrt(nu) - sg;
            return {-m * m, 0.0};
        }
        default:
            throw DomainError("critical_point: no closed form for this phase");
    }
}

double diffraction_phi_floor(const ProblemParams& params) {
    return std::cbrt(params.h / params.k) * params.big_threshold;
}

Complex diffraction_coefficient(double phi, const ProblemParams& params) {
    params.validate();
    require(phi > 0.0, "diffraction_coefficient: phi must be positive");
    const double amp =
        std::sqrt(2.0 / kPi) * (params.h / params.k) * 2.0 / (phi * phi * phi * phi);
    return std::polar(amp, -kPi / 4.0);
}

PenumbraArgs penumbra_args(const StretchedCoords& q) {
    PenumbraArgs a;
    const double rt = std::sqrt(q.nu);
    a.theta = (2.0 / 3.0) * q.nu * rt - rt * (q.sigma - rt) * (q.sigma - rt);
    a.zcap = std::pow(q.nu, 0.25) * (rt - q.sigma);
    return a;
}

double q_expansion(double xi, double nu, int q_order) {
    return q_expansion(Complex(xi, 0.0), nu, q_order).real();
}

Complex q_expansion(Complex xi, double nu, int q_order) {
    require(q_order >= 0 && q_order <= 3, "q_expansion: q_order must be in [0, 3]");
    // First term: amplitude expansion of (nu - xi)^{-1/4}.  Second: the
    // expanded quadratic phase term, carrying the factor i.  Third: the next
    // amplitude term.
    Complex q{0.0, 0.0};
    if (q_order >= 1) q += xi / (4.0 * nu);
    if (q_order >= 2) q += Complex(0.0, 1.0) * xi * xi / (4.0 * std::sqrt(nu));
    if (q_order >= 3) q += (5.0 / 32.0) * xi * xi / (nu * nu);
    return q;
}

AttenuationResult u0_D2(const StretchedCoords& q, const ProblemParams& params) {
    const RegionMembership m = region_membership(q, params);
    require(m.d2, "u0_D2: region violation (point is not in zone D2)");
    const double sg = q.sigma, nu = q.nu;
    const double psi2 = 0.5 * (sg * nu + nu * nu / (2.0 * sg) - sg * sg * sg / 6.0);
    const double gap = nu - sg * sg;
    // Saddle-point constant at xi2; matches the diffraction-coefficient
    // normalization.
    const double amp = 1.0 / std::sqrt(kPi * sg) * std::pow(2.0 * sg / gap, 4.0);
    const Complex value = std::polar(amp, psi2 - kPi / 4.0);
    const double order = sg * sg * sg / (gap * gap * gap);
    return finish_region("u0_D2", value, std::abs(value) * order, 0,
                         "stationary-phase closed form");
}

AttenuationResult u0_D3(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg) {
    const RegionMembership m = region_membership(q, params);
    require(m.valid, "u0_D3: outside validity domain");
    require(q.nu >= params.big_threshold, "u0_D3: region violation (nu not large)");
    require(q.sigma < std::sqrt(q.nu), "u0_D3: region violation (shadow side of limit ray)");
    const double alpha = q.sigma - std::sqrt(q.nu);

    std::vector<ContourLeg> legs;
    append_background_left(legs, alpha, cfg, -1, q.nu);
    append_background_ray(legs, alpha, -kPi / 3.0, cfg, -1, q.nu);
    for (auto& leg : legs) leg.phase_scale = background_phase_scale(legs, alpha);
    const ContourIntegral ci = integrate_contour(legs, cfg);

    const ScaledComplex pref = background_prefactor(q.nu);
    const Complex value = (pref * ci.value).value();
    // Unquantified o(1): dropped quadratic-phase terms at the effective
    // integration scale, plus the next saddle order (empirically ~6/gap^3).
    const double gap = std::abs(alpha);
    const double xbar = std::min(1.0 / std::max(gap, 1.0e-6) + 1.5, std::pow(q.nu, 0.25) + 1.0);
    const double o1 = std::min(1.0, 0.3 * xbar * xbar / std::sqrt(q.nu) +
                                        7.0 / std::pow(std::max(gap, 1.0), 3.0));
    const double est = std::abs((pref * Complex(ci.est_error, 0.0)).value()) +
                       std::abs(value) * o1;
    return finish_region("u0_D3", value, est, ci.evaluations,
                         "bg(-inf,0] + bg[0,inf e^{-i pi/3})");
}

Complex fresnel_part_of_F(const StretchedCoords& q) {
    const PenumbraArgs a = penumbra_args(q);
    return -std::exp(kI * a.theta) * fresnel_phi(-a.zcap);
}

AttenuationResult w0_D4(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg) {
    const RegionMembership m = region_membership(q, params);
    require(m.valid, "w0_D4: outside validity domain");
    require(m.d4, "w0_D4: region violation (point is not in zone D4)");
    const double alpha = q.sigma - std::sqrt(q.nu);

    std::vector<ContourLeg> legs;
    append_background_left(legs, alpha, cfg, -1, q.nu);
    // -i Int_0^inf (I'/w1') e^{i alpha xi} dxi: superexponential decay on the axis.
    {
        ContourLeg ray;
        ray.origin = {0.0, 0.0};
        ray.dir = {1.0, 0.0};
        ray.label = "bg-right-I";
        const double cutoff = cfg.abs_floor * cfg.tail_truncation_bound;
        auto env = [=](double t) {
            const double lg = 1.4 - 2.25 * std::log(std::max(t, 1.0)) -
                              (2.0 / 3.0) * std::pow(t, 1.5);
            return safe_exp_arg(lg);
        };
        ray.length = truncate_where(env, cutoff, 1.0, 100.0);
        ray.tail_remainder = cutoff * 20.0;
        ray.integrand = [=](Complex xi) { return -kI * g_background_kernel(xi, alpha); };
        ray.phase_rate = background_rate(ray.origin, ray.dir, alpha);
        ray.check_poles = true;
        legs.push_back(ray);
    }
    for (auto& leg : legs) leg.phase_scale = background_phase_scale(legs, alpha);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    const ScaledComplex pref = background_prefactor(q.nu);
    const Complex background = (pref * ci.value).value();

    const PenumbraArgs a = penumbra_args(q);
    const Complex fresnel = std::exp(kI * a.theta) * fresnel_phi(a.zcap);
    const Complex value = fresnel + background;
    const double gap3 = std::pow(std::abs(std::sqrt(q.nu) - q.sigma), 3.0);
    const double o1 = std::pow(q.nu, -0.75) + std::pow(q.nu, -1.5);
    const double est = std::abs((pref * Complex(ci.est_error, 0.0)).value()) +
                       gap3 * std::abs(fresnel) + o1 * std::abs(background);
    return finish_region("w0_D4", value, est, ci.evaluations,
                         "fresnel + bg(-inf,0] - i bg[0,inf)");
}

AttenuationResult w0_D5(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg, int q_order) {
    const RegionMembership m = region_membership(q, params);
    require(m.valid, "w0_D5: outside validity domain");
    require(q.nu >= params.big_threshold, "w0_D5: region violation (nu not large)");
    require(q.sigma > std::sqrt(q.nu),
            "w0_D5: region violation (illuminated side of limit ray)");
    require(q_order >= 0 && q_order <= 3, "w0_D5: q_order must be in [0, 3]");
    const double alpha = q.sigma - std::sqrt(q.nu);

    std::vector<ContourLeg> legs;
    append_background_left(legs, alpha, cfg, q_order, q.nu);
    append_background_ray(legs, alpha, kPi / 4.0, cfg, q_order, q.nu);
    for (auto& leg : legs) leg.phase_scale = background_phase_scale(legs, alpha);
    const ContourIntegral ci = integrate_contour(legs, cfg);

    const ScaledComplex pref = background_prefactor(q.nu);
    const Complex value = (pref * ci.value).value();
    // Omitted Q-orders at the effective integration scale plus the next
    // saddle order; capped at 100%.
    const double xbar = std::min(1.0 / std::max(alpha, 1.0e-6) + 1.5, std::pow(q.nu, 0.25) + 1.0);
    const double omitted =
        std::min(1.0, std::abs(q_expansion(Complex(xbar, 0.0), q.nu, 3) -
                               q_expansion(Complex(xbar, 0.0), q.nu, q_order)) +
                          std::pow(xbar, 3.0) / std::pow(q.nu, 1.5) +
                          7.0 / std::pow(std::max(alpha, 1.0), 3.0) * std::pow(q.nu, -0.25));
    const double est = std::abs((pref * Complex(ci.est_error, 0.0)).value()) +
                       std::abs(value) * omitted;
    return finish_region("w0_D5", value, est, ci.evaluations,
                         "bg(-inf,0] + bg[0,inf e^{i pi/4}) with Q");
}

CreepingModeTable creeping_modes(int n, const ProblemParams& params) {
    params.validate();
    require(n >= 1 && n <= 20, "creeping_modes: n must be in [1, 20]");
    const ZeroTable zt = w1_prime_zeros(n + 1);
    CreepingModeTable table;
    table.modes.reserve(n);
    for (int j = 0; j < n; ++j) {
        const Complex zeta = zt.zeros[j];
        const Complex a =
            ((scorer_I_prime_scaled(zeta) / (w1(zeta) * zeta)) * (-kI)).value();
        table.modes.emplace_back(zeta, a);
    }
    table.epsilon = 0.5 * (zt.zeros[n - 1].imag() + zt.zeros[n].imag());
    return table;
}

AttenuationResult w0_D6(const StretchedCoords& q, const ProblemParams& params, int n) {
    const RegionMembership m = region_membership(q, params);
    require(m.d6, "w0_D6: region violation (point is not in zone D6)");
    const CreepingModeTable table = creeping_modes(n, params);
    Complex sum{0.0, 0.0};
    for (const auto& [zeta, a] : table.modes) {
        const ScaledComplex term =
            (w1(zeta - q.nu) * a).times_exp(kI * q.sigma * zeta);
        sum += term.value();
    }
    const double est = std::exp(-table.epsilon * q.sigma);
    return finish_region("w0_D6", sum, est, 0, "residue series");
}

AttenuationResult w0_D6_far(const StretchedCoords& q, const ProblemParams& params, int n) {
    const RegionMembership m = region_membership(q, params);
    require(m.d6, "w0_D6_far: region violation (point is not in zone D6)");
    require(q.nu >= params.big_threshold, "w0_D6_far: requires nu >= big_threshold");
    const CreepingModeTable table = creeping_modes(n, params);
    const double rt = std::sqrt(q.nu);
    Complex sum{0.0, 0.0};
    for (const auto& [zeta, a] : table.modes) {
        const Complex expo = kI * ((2.0 / 3.0) * q.nu * rt + zeta * (q.sigma - rt));
        sum += a * std::exp(expo);
    }
    const Complex value = std::polar(std::pow(q.nu, -0.25), kPi / 4.0) * sum;
    const double est = std::exp(-table.epsilon * q.sigma) + std::abs(value) / rt;
    return finish_region("w0_D6_far", value, est, 0, "residue series, far form");
}

}  // namespace penumbra
