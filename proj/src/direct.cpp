#include "penumbra/direct.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "penumbra/specfun.hpp"

namespace penumbra {

namespace {

const Complex kI{0.0, 1.0};

// Re(z^{3/2}) with the principal branch; controls every exponential envelope.
double re32(Complex z) {
    return std::pow(std::abs(z), 1.5) * std::cos(1.5 * std::arg(z));
}

// Envelope bounds are assembled in log space: individual factors reach
// exp(+-600) long before their product does.
double safe_exp(double lg) {
    if (lg < -800.0) return 0.0;
    return std::exp(std::min(lg, 300.0));
}

double log_sum(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log bounds for |w1|, 1/|w1'| (dominant-branch estimates away from the zero
// ray) and |I'|.
double log_env_w1(Complex z) {
    const double r = std::max(std::abs(z), 1.0);
    const double e = (z.imag() > 0.0) ? std::abs(re32(z)) : re32(z);
    return 0.92 - 0.25 * std::log(r) + (2.0 / 3.0) * e;
}

double log_inv_w1p(Complex z) {
    const double r = std::max(std::abs(z), 1.0);
    const double e = (z.imag() > 0.0) ? std::abs(re32(z)) : re32(z);
    return 0.92 - 0.25 * std::log(r) - (2.0 / 3.0) * e;
}

double log_env_i_prime(Complex z) {
    const double r = std::max(std::abs(z), 1.0);
    return log_sum(0.7 - 2.0 * std::log(r), 1.1 + 0.25 * std::log(r) - (2.0 / 3.0) * re32(z));
}

double log_env_h_prime_algebraic(Complex z) {
    const double r = std::max(std::abs(z), 1.0);
    return 0.92 - 2.0 * std::log(r);
}

// --- scaled integrand pieces ---

Complex phase_factor_times(const ScaledComplex& s, double sigma, Complex xi) {
    return s.times_exp(kI * sigma * xi).value();
}

Complex full_kernel(Complex xi, double nu, double sigma) {
    // [I'(xi)/w1'(xi)] w1(xi - nu) e^{i sigma xi}
    const ScaledComplex r =
        scorer_I_prime_scaled(xi) / w1_prime(xi) * w1(xi - Complex(nu, 0.0));
    return phase_factor_times(r, sigma, xi);
}

Complex ratio_kernel(Complex xi, double nu, double sigma) {
    // [H'(xi)/w1'(xi)] w1(xi - nu) e^{i sigma xi}
    const ScaledComplex r =
        scorer_H_prime_scaled(xi) / w1_prime(xi) * w1(xi - Complex(nu, 0.0));
    return phase_factor_times(r, sigma, xi);
}

Complex airy_kernel(Complex xi, double nu, double sigma) {
    // w1(xi - nu) e^{i sigma xi}
    return phase_factor_times(w1(xi - Complex(nu, 0.0)), sigma, xi);
}

Complex w1_spectral_kernel(Complex xi, double nu, double sigma) {
    // [I(xi - nu) - (I'/w1') w1(xi - nu)] e^{i sigma xi}
    const Complex eta = xi - Complex(nu, 0.0);
    const ScaledComplex a = scorer_I_scaled(eta);
    const ScaledComplex b = scorer_I_prime_scaled(xi) / w1_prime(xi) * w1(eta);
    return phase_factor_times(a - b, sigma, xi);
}

Complex w1_shadow_tail_kernel(Complex xi, double nu, double sigma) {
    // i [H(xi - nu) - (H'/w1') w1(xi - nu)] e^{i sigma xi}
    // (exact rewriting of the spectral kernel; the sqrt(pi) w1 parts cancel)
    const Complex eta = xi - Complex(nu, 0.0);
    const ScaledComplex a = scorer_H_scaled(eta);
    const ScaledComplex b = scorer_H_prime_scaled(xi) / w1_prime(xi) * w1(eta);
    return phase_factor_times((a - b) * kI, sigma, xi);
}

// Contour geometry shared by U0/W0/F/D/G.
struct ContourFrame {
    double t_left;     // left split point (positive number)
    double x_right;    // right split point
    Complex down_dir;  // e^{i(pi + d)}: down-left
    Complex up_dir;    // e^{i(pi - u)}: up-left
    Complex right_dir; // e^{+-i r}: off-axis right
    double cutoff;
};

ContourFrame make_frame(double sigma, double nu, const QuadratureConfig& cfg) {
    cfg.tail_rotation.validate();
    ContourFrame fr;
    double t = 8.0;
    if (sigma > 0.0) {
        const double saddle_d = std::pow(nu / (2.0 * sigma), 2.0);  // D-part turning scale
        const double saddle_f = sigma * sigma - nu;                 // F-part turning scale
        t = std::max({t, saddle_d, saddle_f});
    }
    fr.t_left = 1.25 * t + 12.0;
    fr.x_right = nu + 8.0;
    fr.down_dir = std::polar(1.0, kPi + cfg.tail_rotation.left_airy);
    fr.up_dir = std::polar(1.0, kPi - cfg.tail_rotation.left_ratio);
    fr.right_dir = std::polar(1.0, sigma > 0.0 ? cfg.tail_rotation.right
                                               : -cfg.tail_rotation.right);
    fr.cutoff = cfg.abs_floor * cfg.tail_truncation_bound;
    return fr;
}

// Largest oscillatory exponent reached on the frame's legs; the associated
// double-rounding jitter eps*scale*|f| is the accuracy floor.
double frame_phase_scale(const ContourFrame& fr, double sigma, double nu) {
    const double reach = fr.t_left + 60.0;
    return (2.0 / 3.0) * std::pow(reach + nu, 1.5) + (4.0 / 3.0) * std::pow(reach, 1.5) +
           std::abs(sigma) * (reach + fr.x_right);
}

std::function<double(double)> full_rate(const Complex origin, const Complex dir, double sigma,
                                        double nu) {
    return [=](double t) {
        const Complex xi = origin + t * dir;
        const double axi = std::abs(xi);
        return std::abs(sigma) + std::sqrt(axi + nu + 1.0) + 2.0 * std::sqrt(axi + 1.0);
    };
}

ContourLeg make_tail(Complex origin, Complex dir, const std::string& label,
                     std::function<Complex(Complex)> f,
                     std::function<double(double)> envelope, double cutoff, double sigma,
                     double nu, bool poles) {
    ContourLeg leg;
    leg.origin = origin;
    leg.dir = dir;
    leg.label = label;
    leg.integrand = std::move(f);
    leg.length = truncate_where(envelope, cutoff, 1.0, 3.0e5);
    leg.tail_remainder = cutoff * 20.0;
    leg.phase_rate = full_rate(origin, dir, sigma, nu);
    leg.check_poles = poles;
    return leg;
}

// F-type left tail: w1(xi - nu) e^{i sigma xi} into the lower half-plane.
ContourLeg left_airy_tail(const ContourFrame& fr, double sigma, double nu, Complex scale) {
    const Complex origin{-fr.t_left, 0.0};
    const Complex dir = fr.down_dir;
    auto env = [=](double t) {
        const Complex xi = origin + t * dir;
        return safe_exp(std::log(std::abs(scale)) + log_env_w1(xi - nu) - sigma * xi.imag());
    };
    return make_tail(origin, dir, "left-airy-down",
                     [=](Complex xi) { return scale * airy_kernel(xi, nu, sigma); }, env,
                     fr.cutoff, sigma, nu, false);
}

// D-type left tail: (H'/w1') w1(xi - nu) e^{i sigma xi}; up for sigma > 0,
// down otherwise.
ContourLeg left_ratio_tail(const ContourFrame& fr, double sigma, double nu, Complex scale) {
    const Complex origin{-fr.t_left, 0.0};
    const Complex dir = (sigma > 0.0) ? fr.up_dir : fr.down_dir;
    auto env = [=](double t) {
        const Complex xi = origin + t * dir;
        const Complex eta = xi - nu;
        const double lg_ratio = 1.1 - 2.25 * std::log(std::abs(xi)) +
                                (dir.imag() > 0.0 ? -1.0 : 1.0) * (2.0 / 3.0) *
                                    std::abs(re32(xi));
        return safe_exp(std::log(std::abs(scale)) + lg_ratio + log_env_w1(eta) -
                        sigma * xi.imag());
    };
    return make_tail(origin, dir, dir.imag() > 0.0 ? "left-ratio-up" : "left-ratio-down",
                     [=](Complex xi) { return scale * ratio_kernel(xi, nu, sigma); }, env,
                     fr.cutoff, sigma, nu, true);
}

// Right tail of the full kernel, rotated off the axis by the sign of sigma.
ContourLeg right_full_tail(const ContourFrame& fr, double sigma, double nu, Complex scale) {
    const Complex origin{fr.x_right, 0.0};
    const Complex dir = fr.right_dir;
    auto env = [=](double t) {
        const Complex xi = origin + t * dir;
        const Complex eta = xi - nu;
        return safe_exp(std::log(std::abs(scale)) + log_env_i_prime(xi) + log_inv_w1p(xi) +
                        log_env_w1(eta) - sigma * xi.imag());
    };
    return make_tail(origin, dir, "right-full", [=](Complex xi) {
        return scale * full_kernel(xi, nu, sigma);
    }, env, fr.cutoff, sigma, nu, true);
}

ContourLeg real_leg(double a, double b, const std::string& label,
                    std::function<Complex(Complex)> f, double sigma, double nu, bool poles) {
    ContourLeg leg;
    leg.origin = Complex(a, 0.0);
    leg.dir = Complex(1.0, 0.0);
    leg.length = b - a;
    leg.label = label;
    leg.integrand = std::move(f);
    leg.phase_rate = full_rate(leg.origin, leg.dir, sigma, nu);
    leg.check_poles = poles;
    return leg;
}

AttenuationResult finish(const char* name, const ContourIntegral& ci, Complex prefactor,
                         const std::string& desc, const QuadratureConfig& cfg) {
    AttenuationResult r;
    r.value = prefactor * ci.value;
    r.est_error = std::abs(prefactor) * ci.est_error;
    r.evaluations = ci.evaluations;
    r.contour_descriptor = desc;
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw NumericsError(std::string(name) + ": non-finite result");
    if (cfg.trace) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "{\"integral\":\"%s\",\"panel_count\":%d,\"contour\":\"%s\","
                      "\"value_re\":%.16e,\"value_im\":%.16e,\"est_error\":%.3e}\n",
                      name, ci.panels, desc.c_str(), r.value.real(), r.value.imag(),
                      r.est_error);
        *cfg.trace << buf;
    }
    return r;
}

std::string frame_desc(const ContourFrame& fr, double sigma) {
    std::ostringstream os;
    os << "real[" << -fr.t_left << "," << fr.x_right << "] + airy-tail(down "
       << std::arg(fr.down_dir) << ") + ratio-tail(" << (sigma > 0.0 ? "up " : "down ")
       << (sigma > 0.0 ? std::arg(fr.up_dir) : std::arg(fr.down_dir)) << ") + right-tail("
       << std::arg(fr.right_dir) << ")";
    return os.str();
}

}  // namespace

Complex incident_attenuation(const StretchedCoords& q) {
    const double th = heaviside(q.sigma);
    if (th == 0.0) return {1.0, 0.0};
    return std::exp(kI * (q.sigma * q.nu - q.sigma * q.sigma * q.sigma / 3.0));
}

AttenuationResult u0_direct(const StretchedCoords& q, const QuadratureConfig& cfg) {
    if (q.nu < 0.0) throw DomainError("u0_direct: nu must be >= 0");
    const double sg = q.sigma, nu = q.nu;
    const ContourFrame fr = make_frame(sg, nu, cfg);

    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(-fr.t_left, fr.x_right, "core",
                            [=](Complex xi) { return full_kernel(xi, nu, sg); }, sg, nu, true));
    // Left tail via the exact split I'/w1' = -i sqrt(pi) + i H'/w1'; the
    // outward parametrization reverses the orientation, hence the sign flips.
    legs.push_back(left_airy_tail(fr, sg, nu, Complex(0.0, kSqrtPi)));
    legs.push_back(left_ratio_tail(fr, sg, nu, -kI));
    legs.push_back(right_full_tail(fr, sg, nu, Complex(1.0, 0.0)));

    for (auto& leg : legs) leg.phase_scale = frame_phase_scale(fr, sg, nu);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    return finish("u0", ci, Complex(-1.0 / (2.0 * kPi), 0.0), frame_desc(fr, sg), cfg);
}

AttenuationResult w0_direct(const StretchedCoords& q, const QuadratureConfig& cfg,
                            W0Representation rep) {
    const double sg = q.sigma, nu = q.nu;
    if (rep == W0Representation::IncidentPlusOutgoing) {
        AttenuationResult r = u0_direct(q, cfg);
        r.value += incident_attenuation(q);
        r.contour_descriptor = "incident + (" + r.contour_descriptor + ")";
        return r;
    }
    if (q.nu < 0.0) throw DomainError("w0_direct: nu must be >= 0");
    const ContourFrame fr = make_frame(sg, nu, cfg);
    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(-fr.t_left, fr.x_right, "core",
                            [=](Complex xi) { return w1_spectral_kernel(xi, nu, sg); }, sg, nu,
                            true));
    if (sg > 0.0) {
        // Exact cancellation leaves i [H(eta) - (H'/w1') w1(eta)]; both pieces decay
        // on the upward-rotated ray.
        const Complex origin{-fr.t_left, 0.0};
        const Complex dir = fr.up_dir;
        auto env = [=](double t) {
            const Complex xi = origin + t * dir;
            const Complex eta = xi - nu;
            const double lg_ratio = 1.1 - 2.25 * std::log(std::abs(xi)) -
                                    (2.0 / 3.0) * std::abs(re32(xi)) + log_env_w1(eta);
            const double lg_h = 0.92 - std::log(std::abs(eta));
            return safe_exp(log_sum(lg_h, lg_ratio) - sg * xi.imag());
        };
        legs.push_back(make_tail(origin, dir, "left-shadow-up",
                                 [=](Complex xi) { return -w1_shadow_tail_kernel(xi, nu, sg); },
                                 env, fr.cutoff, sg, nu, true));
    } else {
        // Whole kernel decays on the downward ray when sigma <= 0.
        const Complex origin{-fr.t_left, 0.0};
        const Complex dir = fr.down_dir;
        auto env = [=](double t) {
            const Complex xi = origin + t * dir;
            const Complex eta = xi - nu;
            const double lg_ratio = 1.1 - 2.25 * std::log(std::abs(xi)) +
                                    (2.0 / 3.0) * std::abs(re32(xi)) + log_env_w1(eta);
            const double lg_i = log_sum(0.7 - std::log(std::abs(eta)),
                                        1.1 - 0.25 * std::log(std::abs(eta)));
            return safe_exp(log_sum(lg_i, lg_ratio) - sg * xi.imag());
        };
        legs.push_back(make_tail(origin, dir, "left-spectral-down",
                                 [=](Complex xi) { return -w1_spectral_kernel(xi, nu, sg); },
                                 env, fr.cutoff, sg, nu, true));
    }
    {
        const Complex origin{fr.x_right, 0.0};
        const Complex dir = fr.right_dir;
        auto env = [=](double t) {
            const Complex xi = origin + t * dir;
            const Complex eta = xi - nu;
            const double ea = std::max(std::abs(eta), 1.0);
            const double lg_i = log_sum(0.7 - std::log(ea),
                                        1.1 - 0.25 * std::log(ea) -
                                            (2.0 / 3.0) * std::max(re32(eta), 0.0));
            const double lg_ratio =
                log_env_i_prime(xi) + log_inv_w1p(xi) + log_env_w1(eta);
            return safe_exp(log_sum(lg_i, lg_ratio) - sg * xi.imag());
        };
        legs.push_back(make_tail(origin, dir, "right-spectral",
                                 [=](Complex xi) { return w1_spectral_kernel(xi, nu, sg); },
                                 env, fr.cutoff, sg, nu, true));
    }
    for (auto& leg : legs) leg.phase_scale = frame_phase_scale(fr, sg, nu);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    return finish("w0-spectral", ci, Complex(1.0 / (2.0 * kPi), 0.0), frame_desc(fr, sg), cfg);
}

AttenuationResult f_direct(const StretchedCoords& q, const QuadratureConfig& cfg) {
    if (q.nu < 0.0) throw DomainError("f_direct: nu must be >= 0");
    const double sg = q.sigma, nu = q.nu;
    ContourFrame fr = make_frame(sg, nu, cfg);
    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(-fr.t_left, 0.0, "core",
                            [=](Complex xi) { return airy_kernel(xi, nu, sg); }, sg, nu, false));
    legs.push_back(left_airy_tail(fr, sg, nu, Complex(-1.0, 0.0)));  // reversed orientation
    for (auto& leg : legs) leg.phase_scale = frame_phase_scale(fr, sg, nu);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    return finish("f", ci, kI / (2.0 * kSqrtPi), "real[-T,0] + airy-tail", cfg);
}

AttenuationResult d_direct(const StretchedCoords& q, const QuadratureConfig& cfg) {
    if (q.nu < 0.0) throw DomainError("d_direct: nu must be >= 0");
    const double sg = q.sigma, nu = q.nu;
    ContourFrame fr = make_frame(sg, nu, cfg);
    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(-fr.t_left, 0.0, "core",
                            [=](Complex xi) { return ratio_kernel(xi, nu, sg); }, sg, nu, true));
    legs.push_back(left_ratio_tail(fr, sg, nu, Complex(-1.0, 0.0)));  // reversed orientation
    for (auto& leg : legs) leg.phase_scale = frame_phase_scale(fr, sg, nu);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    return finish("d", ci, -kI / (2.0 * kPi), "real[-T,0] + ratio-tail", cfg);
}

AttenuationResult g_direct(const StretchedCoords& q, const QuadratureConfig& cfg) {
    if (q.nu < 0.0) throw DomainError("g_direct: nu must be >= 0");
    const double sg = q.sigma, nu = q.nu;
    ContourFrame fr = make_frame(sg, nu, cfg);
    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(0.0, fr.x_right, "core",
                            [=](Complex xi) { return full_kernel(xi, nu, sg); }, sg, nu, true));
    legs.push_back(right_full_tail(fr, sg, nu, Complex(1.0, 0.0)));
    for (auto& leg : legs) leg.phase_scale = frame_phase_scale(fr, sg, nu);
    const ContourIntegral ci = integrate_contour(legs, cfg);
    return finish("g", ci, Complex(-1.0 / (2.0 * kPi), 0.0), "real[0,X] + right-tail", cfg);
}

double neumann_residual(double sigma, const QuadratureConfig& cfg) {
    if (!(sigma > 0.0)) throw DomainError("neumann_residual: sigma must be positive");
    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1.0e-9);
    const double t_left = 1.25 * sigma * sigma + 12.0;
    const double x_right = 8.0;
    const double cutoff = tight.abs_floor * tight.tail_truncation_bound;
    const Complex up = std::polar(1.0, kPi - tight.tail_rotation.left_ratio);
    const Complex down = std::polar(1.0, kPi + tight.tail_rotation.left_airy);
    const Complex rdir = std::polar(1.0, tight.tail_rotation.right);

    auto iprime = [=](Complex xi) {
        return scorer_I_prime_scaled(xi).times_exp(kI * sigma * xi).value();
    };
    // Left tails are parametrized outward; the sign flips restore orientation.
    auto w1p_part = [=](Complex xi) {
        return (w1_prime(xi) * Complex(0.0, kSqrtPi)).times_exp(kI * sigma * xi).value();
    };
    auto hprime_part = [=](Complex xi) {
        return (scorer_H_prime_scaled(xi) * (-kI)).times_exp(kI * sigma * xi).value();
    };

    std::vector<ContourLeg> legs;
    legs.push_back(real_leg(-t_left, x_right, "core", iprime, sigma, 0.0, false));
    {
        const Complex origin{-t_left, 0.0};
        auto env = [=](double t) {
            const Complex xi = origin + t * down;
            return safe_exp(1.27 + 0.25 * std::log(std::abs(xi)) + (2.0 / 3.0) * re32(xi) -
                            sigma * xi.imag());
        };
        legs.push_back(make_tail(origin, down, "left-w1p-down", w1p_part, env, cutoff, sigma,
                                 0.0, false));
    }
    {
        const Complex origin{-t_left, 0.0};
        auto env = [=](double t) {
            const Complex xi = origin + t * up;
            return safe_exp(log_env_h_prime_algebraic(xi) - sigma * xi.imag());
        };
        legs.push_back(make_tail(origin, up, "left-hp-up", hprime_part, env, cutoff, sigma, 0.0,
                                 false));
    }
    {
        const Complex origin{x_right, 0.0};
        auto env = [=](double t) {
            const Complex xi = origin + t * rdir;
            return safe_exp(log_env_i_prime(xi) - sigma * xi.imag());
        };
        legs.push_back(make_tail(origin, rdir, "right-ip", iprime, env, cutoff, sigma, 0.0,
                                 false));
    }

    for (auto& leg : legs)
        leg.phase_scale = (4.0 / 3.0) * std::pow(t_left + 60.0, 1.5) + sigma * (t_left + 60.0);
    const ContourIntegral ci = integrate_contour(legs, tight);
    const Complex lhs = ci.value / (2.0 * kPi);
    const Complex rhs = -kI * sigma * std::exp(-kI * sigma * sigma * sigma / 3.0);
    return std::abs(lhs - rhs) / sigma;
}

double pde_residual(const StretchedCoords& q, double step, const QuadratureConfig& cfg) {
    if (!(q.sigma > step) || !(q.nu > step))
        throw DomainError("pde_residual: need an interior point with sigma, nu > step");
    auto u = [&](double s, double n) { return u0_direct({s, n}, cfg).value; };
    const Complex c = u(q.sigma, q.nu);
    const Complex d2nu =
        (u(q.sigma, q.nu + step) - 2.0 * c + u(q.sigma, q.nu - step)) / (step * step);
    const Complex dsig = (u(q.sigma + step, q.nu) - u(q.sigma - step, q.nu)) / (2.0 * step);
    const Complex res = d2nu + kI * dsig + q.nu * heaviside(q.sigma) * c;
    return std::abs(res) / std::abs(c);
}

}  // namespace penumbra
