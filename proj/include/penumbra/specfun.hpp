#ifndef PENUMBRA_SPECFUN_HPP
#define PENUMBRA_SPECFUN_HPP

#include <iosfwd>
#include <string_view>
#include <vector>

#include "penumbra/types.hpp"

namespace penumbra {

// Complex-argument Fock Airy functions w1, w2, v, the inhomogeneous Airy
// (Scorer-type) functions I and H, the Fresnel integral Phi, leading-order
// sector asymptotics, and the zeros of w1'.
//
// Evaluation: compensated Maclaurin series inside a switchover disk,
// optimally truncated asymptotic expansions (with connection rotations)
// outside.  Everything that can exceed double range is returned scaled.

inline constexpr double kAirySeriesRadius = 9.0;
inline constexpr double kScorerSeriesRadius = 14.0;
inline constexpr double kArgCap = 1.0e4;  // |z| guard for public operations

// ---- scaled evaluations (valid on the whole plane up to kArgCap) ----

ScaledComplex w1(Complex z);
ScaledComplex w1_prime(Complex z);
ScaledComplex w2(Complex z);
ScaledComplex w2_prime(Complex z);

/// Classical companion solution v(z) = (w1(z) - w2(z)) / (2i) = sqrt(pi) Ai(z).
ScaledComplex fock_v(Complex z);

ScaledComplex scorer_I_scaled(Complex z);
ScaledComplex scorer_I_prime_scaled(Complex z);
ScaledComplex scorer_H_scaled(Complex z);
ScaledComplex scorer_H_prime_scaled(Complex z);

// ---- plain-value accessors (throw NumericsError if the exponent overflows) ----

Complex scorer_I(Complex z);
Complex scorer_I_prime(Complex z);
Complex scorer_H(Complex z);
Complex scorer_H_prime(Complex z);

/// Fresnel integral Phi(z) = e^{-i pi/4}/sqrt(pi) * Int_{-inf}^{z} e^{i t^2} dt.
Complex fresnel_phi(double z);

// ---- leading-order sector asymptotics ----

enum class W1Branch { SingleExponential, TwoTerm };
enum class ScorerBranch { Algebraic, AlgebraicPlusExponential };

struct AsymptoticValue {
    ScaledComplex value;
    double error_order;  // magnitude of the leading relative error factor
};

AsymptoticValue asymptotic_w1(Complex z, W1Branch branch);
AsymptoticValue asymptotic_I(Complex z, ScorerBranch branch);
AsymptoticValue asymptotic_H(Complex z, ScorerBranch branch);

// ---- zeros of w1' ----

/// Zeros zeta_j of w1', ordered by modulus, all on the ray arg z = pi/3.
struct ZeroTable {
    std::vector<Complex> zeros;
    int count = 0;
};

/// First n zeros of w1', 1 <= n <= 50, polished by Newton iteration.
ZeroTable w1_prime_zeros(int n);

// ---- diagnostics ----

/// CSV dump (re_z, im_z, re_f, im_f, f_name), 17 significant digits.
/// Known names: w1, w1_prime, w2, w2_prime, v, I, I_prime, H, H_prime.
void dump_function_table(std::ostream& os, std::string_view f_name,
                         const std::vector<Complex>& points);

namespace detail {

// Exposed for the series/asymptotics overlap-agreement tests.
struct FunPair {
    Complex f;
    Complex fp;
};
FunPair ai_maclaurin(Complex z);
FunPair hi_maclaurin(Complex z);

// Second derivatives from independent series chains (|z| <= series radius
// only).  Distinct coefficient recurrences, so the Airy/Scorer ODE residual
// checks against these are not circular.
Complex ai_maclaurin_second(Complex z);
Complex hi_maclaurin_second(Complex z);
ScaledComplex ai_asymptotic(Complex z);
ScaledComplex ai_prime_asymptotic(Complex z);
ScaledComplex hi_asymptotic(Complex z);
ScaledComplex hi_prime_asymptotic(Complex z);

ScaledComplex ai_scaled(Complex z);
ScaledComplex ai_prime_scaled(Complex z);
ScaledComplex hi_scaled(Complex z);
ScaledComplex hi_prime_scaled(Complex z);

// Test hook: relative perturbation applied inside w1/w1_prime.  Not for
// production use; set only while no evaluation is in flight.
extern double w1_test_perturbation;

}  // namespace detail

}  // namespace penumbra

#endif
