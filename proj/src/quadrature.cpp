#include "penumbra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

#include "penumbra/specfun.hpp"

namespace penumbra {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK DQK15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;  // parameter interval along a leg
    int leg = 0;
    Complex value{0.0, 0.0};
    double err = 0.0;
    double l1 = 0.0;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel evaluate_panel(const std::vector<ContourLeg>& legs, int leg_idx, double a, double b,
                     long& evals) {
    const ContourLeg& leg = legs[leg_idx];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex kron{0.0, 0.0};
    Complex gauss{0.0, 0.0};
    double l1 = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double off = h * kXgk[j];
        const int reps = (j == 7) ? 1 : 2;
        for (int r = 0; r < reps; ++r) {
            const double t = (r == 0) ? c - off : c + off;
            const Complex xi = leg.origin + t * leg.dir;
            const Complex f = leg.integrand(xi);
            ++evals;
            kron += kWgk[j] * f;
            l1 += kWgk[j] * std::abs(f);
            if (j % 2 == 1) gauss += kWg[j / 2] * f;
        }
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.leg = leg_idx;
    p.value = h * kron * leg.dir;
    p.err = std::abs(h * (kron - gauss));
    p.l1 = std::abs(h) * l1;
    return p;
}

void check_pole_distance(const ContourLeg& leg) {
    static const std::vector<Complex> zeros = [] {
        return w1_prime_zeros(30).zeros;
    }();
    const Complex p0 = leg.origin;
    const Complex d = leg.dir;
    for (const Complex zj : zeros) {
        // distance from zj to the segment p0 + t d, t in [0, length]
        const Complex w = zj - p0;
        const double t = std::clamp(w.real() * d.real() + w.imag() * d.imag(), 0.0, leg.length);
        const double dist = std::abs(w - t * d);
        if (dist < 0.1)
            throw NumericsError("pole-proximity: contour leg '" + leg.label +
                                "' passes within 0.1 of a zero of w1'");
    }
}

}  // namespace

void TailRotation::validate() const {
    for (double a : {left_airy, left_ratio, right}) {
        if (!(a > 0.02 && a < kPi / 5.0))
            throw DomainError("TailRotation: angles must lie in (0.02, pi/5)");
    }
}

double truncate_where(const std::function<double(double)>& envelope, double cutoff,
                      double t_min, double t_max) {
    double t = std::max(t_min, 1.0);
    double prev = t;
    while (t <= t_max) {
        if (envelope(t) <= cutoff) {
            // refine down a little between prev and t
            double lo = prev, hi = t;
            for (int i = 0; i < 20; ++i) {
                const double mid = 0.5 * (lo + hi);
                (envelope(mid) <= cutoff ? hi : lo) = mid;
            }
            return hi;
        }
        prev = t;
        t *= 1.7;
    }
    throw NumericsError("tail truncation: envelope does not reach the cutoff");
}

ContourIntegral integrate_contour(const std::vector<ContourLeg>& legs,
                                  const QuadratureConfig& cfg) {
    if (cfg.rel_tol <= 0.0 || cfg.abs_floor < 0.0)
        throw DomainError("QuadratureConfig: rel_tol must be positive");
    cfg.tail_rotation.validate();

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    ContourIntegral total;
    double tail_bound = 0.0;
    double noise = 0.0;  // phase-rounding floor: eps * phase_scale * l1 per panel
    const double eps = std::numeric_limits<double>::epsilon();

    for (int li = 0; li < static_cast<int>(legs.size()); ++li) {
        const ContourLeg& leg = legs[li];
        if (leg.length <= 0.0) continue;
        if (leg.check_poles) check_pole_distance(leg);
        tail_bound += leg.tail_remainder;
        // oscillation-budgeted initial mesh: phase change <= pi/2 per panel
        double t = 0.0;
        int guard = 0;
        while (t < leg.length) {
            const double rate = std::max(leg.phase_rate ? leg.phase_rate(t) : 1.0, 0.05);
            const double w = std::min(0.5 * kPi / rate, leg.length - t);
            Panel p = evaluate_panel(legs, li, t, t + w, total.evaluations);
            total.value += p.value;
            total.est_error += p.err;
            total.l1 += p.l1;
            noise += eps * leg.phase_scale * p.l1;
            ++total.panels;
            queue.push(p);
            t += w;
            if (++guard > 400000)
                throw NumericsError("integrate_contour: initial mesh too fine on leg '" +
                                    leg.label + "'");
        }
    }

    auto target = [&] {
        return std::max(cfg.abs_floor, cfg.rel_tol * std::abs(total.value)) * 0.5;
    };

    int splits = 0;
    // Refine the reducible (panel) part only; the tail bound and the
    // phase-rounding floor are irreducible.
    while (total.est_error > std::max({target(), tail_bound, 1.5 * noise}) &&
           !queue.empty()) {
        if (splits >= cfg.max_subdivisions) {
            const Panel& w = queue.top();
            char msg[240];
            std::snprintf(msg, sizeof(msg),
                          "tolerance-not-met: est_error %.3e above target %.3e after "
                          "max_subdivisions (worst panel: leg '%s' t=[%.3f,%.3f] err %.3e)",
                          total.est_error + tail_bound, target(),
                          legs[w.leg].label.c_str(), w.a, w.b, w.err);
            throw NumericsError(msg);
        }
        const Panel worst = queue.top();
        queue.pop();
        if (worst.err <= 0.0) break;
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(legs, worst.leg, worst.a, mid, total.evaluations);
        Panel right = evaluate_panel(legs, worst.leg, mid, worst.b, total.evaluations);
        total.value += left.value + right.value - worst.value;
        total.est_error += left.err + right.err - worst.err;
        total.l1 += left.l1 + right.l1 - worst.l1;
        noise += eps * legs[worst.leg].phase_scale * (left.l1 + right.l1 - worst.l1);
        ++total.panels;
        queue.push(left);
        queue.push(right);
        ++splits;
    }

    // Tail remainders and the rounding floor are genuine error contributions.
    total.est_error += tail_bound + noise;
    return total;
}

}  // namespace penumbra
