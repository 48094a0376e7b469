#pragma once

#include <cmath>

namespace eplab {

// C-infinity transition built from g(x) = exp(-1/x) (x > 0, else 0):
// smooth_step(x) = g(x) / (g(x) + g(1-x)), identically 0 for x <= 0 and
// identically 1 for x >= 1. Shared by the dyadic partition and the bump
// profiles so both inherit the same regularity.
inline double smooth_bump_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

inline double smooth_bump_g_prime(double x) {
    return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}

inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = smooth_bump_g(x);
    const double b = smooth_bump_g(1.0 - x);
    return a / (a + b);
}

inline double smooth_step_prime(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double a = smooth_bump_g(x);
    const double b = smooth_bump_g(1.0 - x);
    const double ap = smooth_bump_g_prime(x);
    const double bp = smooth_bump_g_prime(1.0 - x);
    const double den = a + b;
    return (ap * b + a * bp) / (den * den);
}

}  // namespace eplab
