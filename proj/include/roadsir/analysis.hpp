#ifndef ROADSIR_ANALYSIS_HPP
#define ROADSIR_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "roadsir/model.hpp"
#include "roadsir/pde.hpp"

namespace roadsir {

/// Front positions over time, the raw material of a speed regression.
struct FrontTrace {
    std::vector<double> times;
    std::vector<double> positions;
};

struct SpeedFit {
    double speed = 0.0;
    double r2 = 0.0;  // coefficient of determination
};

/// Largest x at which the profile crosses `level` (linear interpolation
/// between bracketing nodes); nullopt when the whole profile lies below.
/// x0 is the coordinate of profile[0] and h the node spacing.
std::optional<double> front_position(std::span<const double> profile, double level, double x0,
                                     double h);

/// Least-squares slope of position vs time over the last tail_fraction of
/// the samples. Requires at least 10 samples in the tail window.
SpeedFit fit_speed(const FrontTrace& trace, double tail_fraction = 0.5);

/// Minus the least-squares slope of log(profile - limit) over the nodes
/// with x in [x1, x2]. The excess must be strictly positive and strictly
/// decreasing across the window.
double fit_decay(std::span<const double> profile, double x0, double h, double limit, double x1,
                 double x2);

/// Window where the excess over `limit` lies in [1e-6, 1e-2] of its peak,
/// to the right of the peak. nullopt when no such nodes exist.
std::optional<std::pair<double, double>> auto_decay_window(std::span<const double> profile,
                                                           double x0, double h, double limit);

/// First crossing time of v_star/2 per node of a wall-trace history
/// (linear interpolation in t). Nodes that never cross get NaN.
std::vector<double> peak_time_map(const std::vector<double>& times,
                                  const std::vector<std::vector<double>>& wall_trace,
                                  double v_star_value);

/// Pointwise total-ever-infected map s0 * (1 - exp(-beta * v)).
std::vector<double> itot(const std::vector<double>& v_field, const ModelParams& p);

/// Node masks where the road raises (+) or lowers (-) the steady
/// cumulative potential beyond `tol`, with areas and bounding boxes.
struct RegionReport {
    std::vector<int8_t> sign;  // +1, -1 or 0 per node
    std::int64_t plus_count = 0;
    std::int64_t minus_count = 0;
    double plus_area = 0.0;
    double minus_area = 0.0;
    // bounding boxes [xmin, xmax] x [ymin, ymax]; meaningful when count > 0
    double plus_box[4] = {0, 0, 0, 0};
    double minus_box[4] = {0, 0, 0, 0};
};

RegionReport region_split(const std::vector<double>& v_road, const std::vector<double>& v_plain,
                          const GridSpec& g, double tol);

/// Residuals of the stationary integral identity of the road-field system:
///   bulk_residual = sum(f(v) + I0) dA - sum(nu v(.,0) - mu u) dx,
///   road_residual = sum(nu v(.,0) - mu u) dx,
/// both normalized by the source integral. The y = 0 bulk row enters with
/// half weight (those nodes own half cells against the exchange boundary);
/// all other sums are plain node sums times cell measure. Requires a
/// converged road-field steady state.
std::pair<double, double> integral_balance(const SteadyResult& steady, const ModelParams& p);

/// Trapezoid-weighted total mass h*sum(road) + h^2*sum(bulk); the discrete
/// invariant of pure diffusion plus exchange.
double mass_total(const FieldState& s);

}  // namespace roadsir

#endif
