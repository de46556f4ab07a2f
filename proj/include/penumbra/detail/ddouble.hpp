#ifndef PENUMBRA_DETAIL_DDOUBLE_HPP
#define PENUMBRA_DETAIL_DDOUBLE_HPP

#include <cmath>
#include <complex>

namespace penumbra::detail {

// Compensated double-double arithmetic (~31 significant digits).  Used only
// inside Maclaurin-series evaluators, where terms as large as exp((4/3)|z|^{3/2})
// cancel down to results as small as exp(-(2/3)|z|^{3/2}).

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    constexpr DD(double h) : hi(h), lo(0.0) {}

    double to_double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD add(const DD& x, const DD& y) {
    DD s = two_sum(x.hi, y.hi);
    DD t = two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD sub(const DD& x, const DD& y) { return add(x, DD{-y.hi, -y.lo}); }

inline DD mul(const DD& x, const DD& y) {
    DD p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(const DD& x, double d) {
    DD p = two_prod(x.hi, d);
    p.lo += x.lo * d;
    return quick_two_sum(p.hi, p.lo);
}

inline DD div(const DD& x, double d) {
    const double q1 = x.hi / d;
    DD p = two_prod(q1, d);
    const double q2 = ((x.hi - p.hi) + (x.lo - p.lo)) / d;
    return quick_two_sum(q1, q2);
}

struct DDC {
    DD re, im;

    DDC() = default;
    DDC(const DD& r, const DD& i) : re(r), im(i) {}
    explicit DDC(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    double mag_hi() const { return std::hypot(re.hi, im.hi); }
};

inline DDC add(const DDC& x, const DDC& y) { return {add(x.re, y.re), add(x.im, y.im)}; }

inline DDC mul(const DDC& x, const DDC& y) {
    return {sub(mul(x.re, y.re), mul(x.im, y.im)),
            add(mul(x.re, y.im), mul(x.im, y.re))};
}

inline DDC mul(const DDC& x, double d) { return {mul(x.re, d), mul(x.im, d)}; }

inline DDC mul(const DDC& x, const DD& s) { return {mul(x.re, s), mul(x.im, s)}; }

inline DDC div(const DDC& x, double d) { return {div(x.re, d), div(x.im, d)}; }

}  // namespace penumbra::detail

#endif
