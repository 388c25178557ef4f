#ifndef ROADSIR_ROOTFIND_HPP
#define ROADSIR_ROOTFIND_HPP

#include <cmath>
#include <utility>

#include "roadsir/errors.hpp"

namespace roadsir {

inline constexpr int kMaxBisectIter = 200;

/// Bisection for a root of f on [lo, hi]. Requires a sign change on the
/// bracket; converges to absolute tolerance tol_abs on the argument.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol_abs) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw convergence_error("bisect_root: no sign change on bracket");
    }
    for (int it = 0; it < kMaxBisectIter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol_abs) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw convergence_error("bisect_root: iteration cap reached");
}

/// Least argument at which a monotone predicate becomes true.
/// Starts from a known-false lower bound, doubles an upper bound until the
/// predicate holds, then bisects down to tol_abs. Returns the bracket
/// midpoint, clamped to at least `lo`.
template <class Pred>
double least_true(Pred&& admissible, double lo, double tol_abs) {
    const double floor = lo;
    double hi = 2.0 * lo;
    int doublings = 0;
    while (!admissible(hi)) {
        hi *= 2.0;
        if (++doublings >= kMaxBisectIter) {
            throw convergence_error("least_true: no admissible upper bound found");
        }
    }
    for (int it = 0; it < kMaxBisectIter && hi - lo > tol_abs; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double result = 0.5 * (lo + hi);
    return result < floor ? floor : result;
}

/// Golden-section minimizer for a unimodal function on [lo, hi].
/// Returns {argmin, min value}.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iters = 90) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace roadsir

#endif
