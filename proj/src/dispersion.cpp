#include "roadsir/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "roadsir/rootfind.hpp"

namespace roadsir {

namespace {

constexpr int kScanPoints = 512;
constexpr double kScanSpan = 1e-9;  // lowest grid point relative to b_max

/// Reaction slope at the far-field plateau: f'(v*) for r0 > 1, f'(0) for
/// r0 <= 1 (the plateau is then 0).
double plateau_slope(const ModelParams& p) {
    if (p.r0() > 1.0) {
        return kpp_f_prime(v_star(p), p);
    }
    return kpp_f_prime(0.0, p);
}

/// Existence of a feasible point on a geometric b-grid spanning
/// (kScanSpan*b_max, b_max]. `margin` must be the slack of the binding
/// inequality pair at b; feasibility means margin >= 0 somewhere. When the
/// whole grid is infeasible the neighborhood of the best grid point is
/// re-checked on an 8x finer mesh so narrow windows are not missed.
template <class Margin>
bool grid_feasible(double b_max, Margin&& margin) {
    if (!(b_max > 0.0)) {
        return false;
    }
    double best = -1.0;
    int best_k = 0;
    std::vector<double> bs(kScanPoints);
    for (int k = 0; k < kScanPoints; ++k) {
        bs[k] = b_max * std::pow(kScanSpan, 1.0 - k / double(kScanPoints - 1));
    }
    bs[kScanPoints - 1] = b_max;
    for (int k = 0; k < kScanPoints; ++k) {
        const double m = margin(bs[k]);
        if (m >= 0.0) {
            return true;
        }
        if (k == 0 || m > best) {
            best = m;
            best_k = k;
        }
    }
    const double lo = bs[best_k > 0 ? best_k - 1 : 0];
    const double hi = bs[best_k < kScanPoints - 1 ? best_k + 1 : kScanPoints - 1];
    for (int m = 1; m < 16; ++m) {
        if (margin(lo + (hi - lo) * m / 16.0) >= 0.0) {
            return true;
        }
    }
    return false;
}

}  // namespace

DispersionTriple decay_exponents(const ModelParams& p) {
    p.validate();
    if (p.r0() == 1.0) {
        return {0.0, 0.0, p.mu / p.nu};
    }
    const double r2 = -plateau_slope(p) / p.d;
    const double r = std::sqrt(r2);
    auto g = [&](double b) { return p.D * (r2 - b * b) - p.mu * p.d * b / (p.d * b + p.nu); };
    const double b = bisect_root(g, 0.0, r, 1e-12);
    const double a2 = std::max(0.0, r2 - b * b);
    return {std::sqrt(a2), b, p.mu / (p.d * b + p.nu)};
}

DispersionTriple decay_exponents_perturbed(const ModelParams& p, double zeta, double eps) {
    p.validate();
    const double floor = -plateau_slope(p);
    if (!(zeta > 0.0) || zeta < floor) {
        throw std::invalid_argument("decay_exponents_perturbed: zeta must satisfy zeta >= -f'(v*) > 0, got " +
                                    std::to_string(zeta));
    }
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("decay_exponents_perturbed: eps must lie in [0, 1)");
    }
    const double r2 = zeta / p.d;
    const double r = std::sqrt(r2);
    const double num = p.d * (1.0 + eps);
    const double den0 = p.nu * (1.0 - eps);
    auto g = [&](double b) { return p.D * (r2 - b * b) - p.mu * num * b / (num * b + den0); };
    const double b = bisect_root(g, 0.0, r, 1e-12);
    const double a2 = std::max(0.0, r2 - b * b);
    return {std::sqrt(a2), b, p.mu / (num * b + den0)};
}

bool speed_admissible(const SpeedQuery& q) {
    const ModelParams& p = q.params;
    p.validate();
    if (!(q.c > 0.0)) {
        throw std::domain_error("speed_admissible: candidate speed must be positive");
    }
    if (!(p.r0() > 1.0)) {
        throw no_spreading_error("speed_admissible: requires r0 > 1");
    }
    const double c = q.c;
    const double growth = p.alpha * (p.r0() - 1.0);
    const double disc0 = c * c / (4.0 * p.d) - growth;
    if (disc0 <= 0.0) {
        return false;  // the field relation is infeasible for every a, b
    }
    const double b_max = std::sqrt(disc0 / p.d);
    auto margin = [&](double b) {
        double inner = c * c - 4.0 * p.d * (growth + p.d * b * b);
        if (inner < 0.0) inner = 0.0;
        const double a_lo = (c - std::sqrt(inner)) / (2.0 * p.d);
        const double a_road =
            (c + std::sqrt(c * c + 4.0 * p.D * p.mu * p.d * b / (p.nu + p.d * b))) / (2.0 * p.D);
        return a_road - a_lo;
    };
    return grid_feasible(b_max, margin);
}

double c_sirt(const ModelParams& p) {
    p.validate();
    if (!(p.r0() > 1.0)) {
        throw no_spreading_error("c_sirt: requires r0 > 1");
    }
    const double lo = c_sir(p);
    auto admissible = [&](double c) { return speed_admissible({c, p}); };
    return least_true(admissible, lo, 1e-9 * lo);
}

double omega_reduced(double lam) {
    if (!(lam >= 0.0)) {
        throw std::domain_error("omega_reduced: lambda must be nonnegative");
    }
    // Gap between the standard parabola and the inverted one; an
    // intersection exists iff the gap dips to zero or below.
    auto gap = [lam](double b, double w) {
        return (0.25 + b * b) / w - 0.5 * (w + std::sqrt(w * w + 4.0 * lam * b));
    };
    auto min_gap = [&](double w) {
        const double b_hi = std::max(1.0, lam);
        constexpr int n = 64;
        double best = gap(0.0, w);
        int best_k = 0;
        for (int k = 1; k < n; ++k) {
            const double v = gap(b_hi * k / (n - 1.0), w);
            if (v < best) {
                best = v;
                best_k = k;
            }
        }
        const double lo = b_hi * (best_k > 0 ? best_k - 1 : 0) / (n - 1.0);
        const double hi = b_hi * (best_k < n - 1 ? best_k + 1 : n - 1) / (n - 1.0);
        const auto refined = golden_min([&](double b) { return gap(b, w); }, lo, hi);
        return std::min(best, refined.second);
    };
    auto admissible = [&](double w) { return min_gap(w) <= 0.0; };
    if (!admissible(0.5)) {
        throw convergence_error("omega_reduced: curve intersection missing at w = 1/2");
    }
    double lo = 1e-9;
    double hi = 0.5;
    for (int it = 0; it < kMaxBisectIter && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double reduced_speed(double lam, double rho, double dd) {
    if (!(lam >= 0.0)) {
        throw std::domain_error("reduced_speed: lambda must be nonnegative");
    }
    if (!(rho >= 0.0)) {
        throw std::domain_error("reduced_speed: rho must be nonnegative");
    }
    if (!(dd > 0.0)) {
        throw std::domain_error("reduced_speed: diffusivity ratio must be positive");
    }
    auto admissible = [&](double w) {
        const double disc = dd * w * w - 1.0;
        if (disc <= 0.0) {
            return false;
        }
        const double b_max = 0.5 * std::sqrt(disc);
        auto margin = [&](double b) {
            double inner = dd * (dd * w * w - 1.0 - 4.0 * b * b);
            if (inner < 0.0) inner = 0.0;
            const double a_lo = 0.5 * (dd * w - std::sqrt(inner));
            const double m = lam * b / (1.0 + rho * b);
            const double a_road = 0.5 * (w + std::sqrt(w * w + 4.0 * m));
            return a_road - a_lo;
        };
        return grid_feasible(b_max, margin);
    };
    const double lo = 1.0 / std::sqrt(dd);
    return least_true(admissible, lo, 1e-9 * lo);
}

}  // namespace roadsir
