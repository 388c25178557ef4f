#ifndef ROADSIR_DISPERSION_HPP
#define ROADSIR_DISPERSION_HPP

#include "roadsir/model.hpp"

namespace roadsir {

/// Positive solution of an exponential-ansatz system: decay rate a along
/// the road, decay rate b transverse to it, and trace amplitude ratio gamma.
struct DispersionTriple {
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
};

/// A candidate wave speed paired with the model parameters it refers to.
struct SpeedQuery {
    double c = 0.0;
    ModelParams params;
};

/// Decay exponents of the road-field steady state toward its far-field
/// plateau. Solves
///     D a^2 = mu d b / (d b + nu),   a^2 + b^2 = -f'(v*)/d,
///     gamma = mu / (d b + nu),
/// with v* the positive plateau for r0 > 1 and v* = 0 for r0 < 1.
/// At r0 == 1 the solution degenerates to (0, 0, mu/nu) and is returned
/// exactly.
DispersionTriple decay_exponents(const ModelParams& p);

/// Penalized variant used to bound the decay from below: the transverse
/// profile carries a growing admixture eps and the reaction slope is
/// replaced by -zeta:
///     D a^2 = mu d b (1+eps) / (d b (1+eps) + nu (1-eps)),
///     a^2 + b^2 = zeta / d,
///     gamma = mu / (d b (1+eps) + nu (1-eps)).
/// Requires zeta >= -f'(v*) (> 0) and 0 <= eps < 1; converges to
/// decay_exponents as (zeta, eps) -> (-f'(v*), 0).
DispersionTriple decay_exponents_perturbed(const ModelParams& p, double zeta, double eps);

/// Whether plane-wave supersolutions moving at speed q.c exist, i.e.
/// whether some a, b > 0 satisfies both relaxed relations
///     -D a^2 + c a + mu d b/(nu + d b) >= 0,
///     c a - d (a^2 + b^2) >= alpha (r0 - 1).
/// Monotone nondecreasing in c. Requires r0 > 1 and c > 0.
bool speed_admissible(const SpeedQuery& q);

/// Spreading speed along the road: the least admissible c, found by
/// bisection from c_sir upward (absolute tolerance 1e-9 * c_sir).
/// Equals c_sir when D <= 2 d, exceeds it when D > 2 d.
double c_sirt(const ModelParams& p);

/// Limit curve of the reduced road speed for large diffusivity ratio and
/// reproduction number near 1: the least w such that
///     a = (w + sqrt(w^2 + 4 lam b)) / 2   and   a = (1/4 + b^2) / w
/// intersect for some b >= 0. Decreasing in lam, with value 1/2 at lam = 0.
double omega_reduced(double lam);

/// Least reduced speed w for which the relaxed reduced system
///     -a^2 + w a + lam b/(1 + rho b) >= 0,
///     w a - a^2/dd - b^2 >= 1/4
/// admits a, b > 0. Tends to omega_reduced(lam) as dd -> inf, rho -> 0.
double reduced_speed(double lam, double rho, double dd);

}  // namespace roadsir

#endif
