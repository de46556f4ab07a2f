#ifndef PENUMBRA_TYPES_HPP
#define PENUMBRA_TYPES_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace penumbra {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const double kSqrtPi = std::sqrt(kPi);

/// Thrown when an argument lies outside an operation's stated domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a numerical procedure cannot reach its accuracy target.
class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complex value stored as mantissa * exp(log_scale) so that quantities
/// growing like exp((2/3) z^{3/2}) stay representable.  |mantissa| lies in
/// [1, e) unless the value is exactly zero (then mantissa = 0, log_scale = 0).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    static ScaledComplex zero() { return {}; }

    static ScaledComplex from(Complex v) {
        ScaledComplex s{v, 0.0};
        s.normalize();
        return s;
    }

    static ScaledComplex from_parts(Complex m, double ls) {
        ScaledComplex s{m, ls};
        s.normalize();
        return s;
    }

    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }

    /// log of the modulus; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_scale;
    }

    /// Plain complex value.  Throws when the exponent does not fit a double.
    Complex value() const {
        if (is_zero()) return {0.0, 0.0};
        if (log_scale > 690.0)
            throw NumericsError("ScaledComplex::value: exponent overflow (log_scale=" +
                                std::to_string(log_scale) + ")");
        if (log_scale < -740.0) return {0.0, 0.0};
        return mantissa * std::exp(log_scale);
    }

    void normalize() {
        const double a = std::abs(mantissa);
        if (a == 0.0 || !std::isfinite(a)) {
            if (!std::isfinite(a))
                throw NumericsError("ScaledComplex: non-finite mantissa");
            mantissa = {0.0, 0.0};
            log_scale = 0.0;
            return;
        }
        const double k = std::floor(std::log(a));
        if (k != 0.0) {
            mantissa *= std::exp(-k);
            log_scale += k;
        }
    }

    ScaledComplex operator*(const ScaledComplex& o) const {
        if (is_zero() || o.is_zero()) return zero();
        return from_parts(mantissa * o.mantissa, log_scale + o.log_scale);
    }

    ScaledComplex operator*(Complex c) const {
        if (is_zero() || c == Complex(0.0, 0.0)) return zero();
        return from_parts(mantissa * c, log_scale);
    }

    ScaledComplex operator/(const ScaledComplex& o) const {
        if (o.is_zero()) throw NumericsError("ScaledComplex: division by zero");
        if (is_zero()) return zero();
        return from_parts(mantissa / o.mantissa, log_scale - o.log_scale);
    }

    ScaledComplex operator+(const ScaledComplex& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const ScaledComplex *big = this, *small = &o;
        if (o.log_scale > log_scale) std::swap(big, small);
        const double d = small->log_scale - big->log_scale;
        if (d < -745.0) return *big;
        return from_parts(big->mantissa + small->mantissa * std::exp(d), big->log_scale);
    }

    ScaledComplex operator-() const { return {-mantissa, log_scale}; }
    ScaledComplex operator-(const ScaledComplex& o) const { return *this + (-o); }

    ScaledComplex conj() const { return {std::conj(mantissa), log_scale}; }

    /// Multiply by exp(e) for complex e without forming exp(e) itself.
    ScaledComplex times_exp(Complex e) const {
        if (is_zero()) return zero();
        return from_parts(mantissa * std::exp(Complex(0.0, e.imag())), log_scale + e.real());
    }
};

}  // namespace penumbra

#endif
