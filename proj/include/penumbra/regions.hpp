#ifndef PENUMBRA_REGIONS_HPP
#define PENUMBRA_REGIONS_HPP

#include <utility>
#include <vector>

#include "penumbra/direct.hpp"
#include "penumbra/geometry.hpp"
#include "penumbra/quadrature.hpp"

namespace penumbra {

// Closed-form and reduced-integral asymptotics of the field in the zones
// D2...D6, the diffraction coefficient, the phase functions and their
// critical points, and the creeping-wave residue series.

enum class PhaseId { Psi1, Psi2, Psi3, Psi4, Psi5, Psi2_tilde };

/// Phase (or exponent) functions of the spectral integrand on the various
/// segments; principal branches throughout.
Complex phase(PhaseId id, Complex xi, const StretchedCoords& q);

/// Closed-form critical points: xi1 = nu - sigma^2 (Psi1),
/// xi2 = -((nu - sigma^2)/(2 sigma))^2 (Psi2, needs nu > sigma^2),
/// xi2~ = -(sqrt(nu) - sigma)^2 (Psi2_tilde, needs sigma < sqrt(nu)).
Complex critical_point(PhaseId id, const StretchedCoords& q);

/// A(phi; k) = sqrt(2/pi) (h/k) (2/phi^4) e^{-i pi/4}.  Hard domain error only
/// for phi <= 0; the far-zone advisory line phi >= (h/k)^{1/3} big_threshold is
/// exposed separately because matching tests probe below it.
Complex diffraction_coefficient(double phi, const ProblemParams& params);
double diffraction_phi_floor(const ProblemParams& params);

/// Fresnel arguments of the penumbra formula:
/// Theta = (2/3) nu^{3/2} - sqrt(nu) (sigma - sqrt(nu))^2,  Z = nu^{1/4}(sqrt(nu) - sigma).
struct PenumbraArgs {
    double theta = 0.0;
    double zcap = 0.0;
};
PenumbraArgs penumbra_args(const StretchedCoords& q);

/// Stationary-phase value of U0 far above the limit ray (zone D2).
AttenuationResult u0_D2(const StretchedCoords& q, const ProblemParams& params);

/// Reduced-integral value of U0 near the limit ray on the illuminated side
/// (zone D3): contour (-inf, 0] + [0, inf e^{-i pi/3}).
AttenuationResult u0_D3(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg);

/// Penumbra total field (zone D4): Fresnel part + background integrals.
AttenuationResult w0_D4(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg);
/// The Fresnel part alone: -e^{i Theta} Phi(-Z), the reduction of F.
Complex fresnel_part_of_F(const StretchedCoords& q);

/// Shadow-side total field (zone D5) with the Q-expansion truncated after
/// q_order terms (0..3): contour (-inf, 0] + [0, inf e^{i pi/4}).
AttenuationResult w0_D5(const StretchedCoords& q, const ProblemParams& params,
                        const QuadratureConfig& cfg, int q_order);

/// Leading correction terms of the large-nu reduction of w1(xi - nu) e^{i sigma xi}.
double q_expansion(double xi, double nu, int q_order);
Complex q_expansion(Complex xi, double nu, int q_order);

/// Creeping-mode table: zeros zeta_j with excitation coefficients
/// A_j = -i I'(zeta_j) / (zeta_j w1(zeta_j)) and the separator epsilon.
struct CreepingModeTable {
    std::vector<std::pair<Complex, Complex>> modes;  // (zeta_j, A_j)
    double epsilon = 0.0;                            // Im zeta_n < eps < Im zeta_{n+1}
};
CreepingModeTable creeping_modes(int n, const ProblemParams& params);

/// Deep-shadow residue series (zone D6) with n modes; est_error = e^{-eps sigma}.
AttenuationResult w0_D6(const StretchedCoords& q, const ProblemParams& params, int n);

/// Far-form of the residue series (w1 replaced by its asymptotics; needs
/// nu >= big_threshold).
AttenuationResult w0_D6_far(const StretchedCoords& q, const ProblemParams& params, int n);

}  // namespace penumbra

#endif
