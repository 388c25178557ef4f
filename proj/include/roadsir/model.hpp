#ifndef ROADSIR_MODEL_HPP
#define ROADSIR_MODEL_HPP

#include <optional>

#include "roadsir/errors.hpp"

namespace roadsir {

/// Dimensional parameters of the epidemic model with a line of fast
/// diffusion: bulk diffusivity d, road diffusivity D, recovery rate alpha,
/// transmission rate beta, road-to-field rate mu, field-to-road rate nu
/// (a velocity: it multiplies a trace value in the flux condition), and
/// the uniform initial susceptible density s0.
struct ModelParams {
    double d = 1.0;
    double D = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double mu = 1.0;
    double nu = 1.0;
    double s0 = 1.0;

    /// Basic reproduction number s0*beta/alpha.
    double r0() const { return s0 * beta / alpha; }

    /// Throws std::invalid_argument unless all parameters are strictly
    /// positive and finite (and r0 with them).
    void validate() const;
};

/// Non-dimensional parameter set. lam and rho (and w_sir) exist only above
/// the epidemic threshold r0 > 1.
struct ReducedParams {
    double dd = 0.0;      // diffusivity ratio D/d
    double r0 = 0.0;      // basic reproduction number
    double mu_bar = 0.0;  // mu/alpha
    double nu_bar = 0.0;  // nu/sqrt(d*alpha)
    std::optional<double> w_sir;  // 2*sqrt(r0-1)
    std::optional<double> lam;    // mu_bar/(nu_bar*w_sir)
    std::optional<double> rho;    // w_sir/nu_bar
};

/// KPP reaction of the cumulative-infection potential:
/// f(v) = s0*(1 - exp(-beta*v)) - alpha*v. Requires v >= 0.
double kpp_f(double v, const ModelParams& p);

/// Derivative s0*beta*exp(-beta*v) - alpha. Requires v >= 0.
double kpp_f_prime(double v, const ModelParams& p);

/// Unique positive zero of kpp_f for r0 > 1 (absolute tolerance 1e-12).
/// Throws no_spreading_error when r0 <= 1.
double v_star(const ModelParams& p);

/// Spreading speed of the model without the road, 2*sqrt(d*alpha*(r0-1)).
/// Throws no_spreading_error when r0 <= 1.
double c_sir(const ModelParams& p);

/// Non-dimensionalization. The reduced exchange rate nu_bar uses the
/// diffusive velocity scale sqrt(d*alpha), so that the reduced flux
/// condition keeps the same form as the dimensional one.
ReducedParams reduce(const ModelParams& p);

}  // namespace roadsir

#endif
