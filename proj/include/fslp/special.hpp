#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

// Scalar special functions underlying the closed-form matrix entries.
// Everything here is pure and safe for concurrent use.

namespace fslp {

namespace detail {

// sin(pi*x) with exact zeros at integer x (argument is reduced before the
// sine is taken, so the zeros survive rounding).
inline double sin_pi(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    if (std::abs(x) >= 9.0e15) return 0.0;  // doubles this large are integers
    const double k = std::round(x);
    const double r = x - k;
    if (r == 0.0) return 0.0;
    const double s = std::sin(M_PI * r);
    return (static_cast<long long>(k) & 1) ? -s : s;
}

}  // namespace detail

/// Natural log of the gamma function for x > 0, Lanczos approximation
/// (g = 5.2421875, 14 terms; relative accuracy a few ulp over the
/// supported range).
inline double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        0.339946499848118887e-4,  0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3,
        -0.210264441724104883e-3, 0.217439618115212643e-3,
        -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (const double c : cof) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

/// 1/Gamma(x), extended to the whole real line; exactly zero at the poles
/// of Gamma (non-positive integers).
inline double rgamma(double x) {
    if (x > 0.0) return std::exp(-ln_gamma(x));
    const double s = detail::sin_pi(x);
    if (s == 0.0) return 0.0;
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi
    return s * std::exp(ln_gamma(1.0 - x)) / M_PI;
}

/// ln B(a,b) for a, b > 0.
inline double ln_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("ln_beta: arguments must be positive");
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

namespace detail {

// Sign-tracked log magnitude of 1/Gamma(x). `sign == 0` marks the exact
// zeros at non-positive integers. Lets gamma-ratio products be accumulated
// in log space and exponentiated once.
struct LogRGamma {
    double log_abs;
    int sign;
};

inline LogRGamma log_rgamma(double x) {
    if (x > 0.0) return {-ln_gamma(x), 1};
    const double s = sin_pi(x);
    if (s == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {std::log(std::abs(s) / M_PI) + ln_gamma(1.0 - x), s > 0.0 ? 1 : -1};
}

}  // namespace detail

}  // namespace fslp
