// Test-only reference implementations, kept independent of the library
// code paths they are used to check.
#ifndef ROADSIR_TESTS_REFERENCE_HPP
#define ROADSIR_TESTS_REFERENCE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace refimpl {

/// Plain interval-halving root finder (no shared code with the library).
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Classic fixed-step RK4 for a scalar autonomous ODE.
inline double rk4(const std::function<double(double)>& rhs, double y0, double t_end, int steps) {
    double y = y0;
    const double dt = t_end / steps;
    for (int n = 0; n < steps; ++n) {
        const double k1 = rhs(y);
        const double k2 = rhs(y + 0.5 * dt * k1);
        const double k3 = rhs(y + 0.5 * dt * k2);
        const double k4 = rhs(y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

/// Heat evolution of a radially symmetric truncated-gaussian bump,
/// evaluated by radial quadrature against the exact kernel:
///   v(t, X) = e^{-alpha t} \int_0^R f(r) K(r, |X-c|; 2 d t) dr,
/// with K the radial heat kernel written through the scaled Bessel I0.
inline double heat_truncated_gaussian(double rho, double t, double d, double alpha,
                                      double amplitude, double radius) {
    const double sigma = radius / 3.0;
    const double s = 2.0 * d * t;  // kernel variance
    auto f = [&](double r) { return amplitude * std::exp(-r * r / (2.0 * sigma * sigma)); };
    auto kernel = [&](double r) {
        const double z = r * rho / s;
        // exp(-(r^2+rho^2)/(2s)) * I0(z) = exp(-(r-rho)^2/(2s)) * [I0(z) e^{-z}]
        const double scaled_i0 = std::cyl_bessel_i(0.0, z) * std::exp(-z);
        return (r / s) * std::exp(-(r - rho) * (r - rho) / (2.0 * s)) * scaled_i0;
    };
    // composite Simpson over the compact support
    const int n = 800;  // even
    const double hq = radius / n;
    double acc = f(0.0) * kernel(0.0) + f(radius) * kernel(radius);
    for (int k = 1; k < n; ++k) {
        const double r = k * hq;
        acc += (k % 2 == 1 ? 4.0 : 2.0) * f(r) * kernel(r);
    }
    return std::exp(-alpha * t) * acc * hq / 3.0;
}

/// Brute-force scan that mirrors the definition of the rightmost level
/// crossing directly, with no interpolation shortcuts.
inline double front_scan(const std::vector<double>& profile, double level, double x0, double h) {
    const int n = int(profile.size());
    for (int i = n - 1; i >= 0; --i) {
        if (profile[i] >= level) {
            if (i == n - 1) return x0 + h * i;
            const double t = (profile[i] - level) / (profile[i] - profile[i + 1]);
            return x0 + h * (i + t);
        }
    }
    return -std::numeric_limits<double>::infinity();
}

}  // namespace refimpl

#endif
