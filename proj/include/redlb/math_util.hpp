#pragma once

#include <cmath>
#include <limits>

namespace redlb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

// int_exp(r, w) = integral over [0, w] of e^{-r s} ds = (1 - e^{-r w}) / r.
// Entire in r (limit w at r = 0); w may be +inf when r > 0.
inline double int_exp(double r, double w) {
    if (w == kInf) return 1.0 / r;  // caller guarantees r > 0 for infinite w
    const double z = r * w;
    if (std::fabs(z) < 1e-8) {
        // series of w * (1 - e^{-z}) / z
        return w * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0);
    }
    return -std::expm1(-z) / r;
}

// coef * integral over [lo, hi] of e^{shift + c w} dw.
// Factors out the larger endpoint exponent so neither exp() overflows
// when the result itself is representable.
inline double int_exp_shifted(double coef, double shift, double c, double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double z = c * (hi - lo);
    if (std::fabs(z) < 1e-12) {
        return coef * std::exp(shift + c * lo) * (hi - lo);
    }
    if (z > 0.0) {
        return coef * std::exp(shift + c * hi) * (-std::expm1(-z)) / c;
    }
    return coef * std::exp(shift + c * lo) * std::expm1(z) / c;
}

inline double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace detail
}  // namespace redlb
