#ifndef PENUMBRA_DIRECT_HPP
#define PENUMBRA_DIRECT_HPP

#include "penumbra/geometry.hpp"
#include "penumbra/quadrature.hpp"

namespace penumbra {

// Direct numerical evaluation of the exact spectral representations: the
// outgoing attenuation factor U0, the total-field factor W0, and the
// Fock-type split F, D, G.  These serve as the ground truth the regional
// asymptotic formulas are checked against.

/// Main term of the incident attenuation factor:
/// V = 1 - theta(sigma) + theta(sigma) e^{i(sigma nu - sigma^3/3)}.
Complex incident_attenuation(const StretchedCoords& q);

/// U0 = -(1/2pi) Int_R [I'(xi)/w1'(xi)] w1(xi - nu) e^{i sigma xi} dxi.
AttenuationResult u0_direct(const StretchedCoords& q, const QuadratureConfig& cfg);

/// Selectable representation of the total-field factor W0.
enum class W0Representation {
    /// Incident main term V plus U0.  For sigma <= 0 this includes the
    /// "1 - theta" incident contribution and therefore equals 1 + U0.
    IncidentPlusOutgoing,
    /// Single spectral integral of [I(xi-nu) - (I'/w1') w1(xi-nu)] e^{i sigma xi};
    /// vanishes identically for sigma < 0.
    Spectral,
};

AttenuationResult w0_direct(const StretchedCoords& q, const QuadratureConfig& cfg,
                            W0Representation rep = W0Representation::IncidentPlusOutgoing);

/// Fock-type split integrals over (-inf,0], (-inf,0], [0,inf): U0 = F + D + G.
AttenuationResult f_direct(const StretchedCoords& q, const QuadratureConfig& cfg);
AttenuationResult d_direct(const StretchedCoords& q, const QuadratureConfig& cfg);
AttenuationResult g_direct(const StretchedCoords& q, const QuadratureConfig& cfg);

/// |(1/2pi) Int I'(xi) e^{i sigma xi} dxi - (-i sigma e^{-i sigma^3/3})| / sigma,
/// the residual of the Neumann boundary condition at nu = 0.  Requires sigma > 0.
double neumann_residual(double sigma, const QuadratureConfig& cfg);

/// Central-difference residual of d^2_nu U0 + i d_sigma U0 + nu theta(sigma) U0,
/// normalized by |U0|.  Requires sigma > step and nu > step.
double pde_residual(const StretchedCoords& q, double step, const QuadratureConfig& cfg);

}  // namespace penumbra

#endif
