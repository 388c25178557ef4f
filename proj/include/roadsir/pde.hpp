#ifndef ROADSIR_PDE_HPP
#define ROADSIR_PDE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "roadsir/model.hpp"

namespace roadsir {

/// The four model forms handled by the integrator:
///  - scalar_v:      cumulative potential v with sources as forcing, no road
///                   (a homogeneous Neumann wall at y = 0 emulates the
///                   y-symmetric whole-plane problem);
///  - roadfield_uv:  coupled (u, v) potentials with the exchange condition
///                   on y = 0 and sources as forcing;
///  - sir_direct:    (S, I) densities, sources as initial data, no road;
///  - sirt_direct:   (S, I, T) densities with the exchange condition.
enum class Mode { scalar_v, roadfield_uv, sir_direct, sirt_direct };

constexpr bool has_road(Mode m) { return m == Mode::roadfield_uv || m == Mode::sirt_direct; }
constexpr bool is_transformed(Mode m) { return m == Mode::scalar_v || m == Mode::roadfield_uv; }

std::string_view mode_name(Mode m);
Mode mode_from_name(std::string_view name);

/// Uniform grid on [-lx, lx] x [0, ly]; y = 0 is the road/wall line.
struct GridSpec {
    double lx = 0.0;
    double ly = 0.0;
    double h = 0.0;
    double cfl = 0.4;

    int nx() const;
    int ny() const;
    double x(int i) const { return i * h - lx; }
    double y(int j) const { return j * h; }
    void validate() const;
};

/// Compactly supported source: identically zero outside the disk of the
/// given radius around the center. The truncated gaussian uses a standard
/// deviation of radius/3.
struct SourceSpec {
    enum class Shape { none, disk, gaussian };
    Shape shape = Shape::none;
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
    double amplitude = 0.0;

    bool empty() const { return shape == Shape::none || amplitude == 0.0 || radius == 0.0; }
    double bulk_value(double x, double y) const;
    double line_value(double x) const;
    void validate() const;
};

std::string_view shape_name(SourceSpec::Shape s);
SourceSpec::Shape shape_from_name(std::string_view name);

/// Discretized state of one model form at one time.
struct FieldState {
    Mode mode = Mode::scalar_v;
    GridSpec grid;
    double t = 0.0;
    std::vector<double> bulk;        // v or I, row-major (j * nx + i)
    std::vector<double> bulk_s;      // S (direct modes only)
    std::vector<double> road;        // u or T (road modes only)
    std::vector<double> bulk_force;  // sampled I0 forcing (transformed modes)
    std::vector<double> road_force;  // sampled T0 forcing (roadfield_uv)

    int nx() const { return grid.nx(); }
    int ny() const { return grid.ny(); }
    double bulk_at(int i, int j) const { return bulk[size_t(j) * nx() + i]; }
};

/// Explicit-step size cfl * h^2 / (4 * max(d, D)).
double stable_dt(const GridSpec& g, const ModelParams& p);

/// Parameter requirements of the integrator alone: d > 0, everything else
/// nonnegative (degenerate exchange is allowed here, unlike ModelParams).
void validate_pde_params(const ModelParams& p, Mode mode);

/// Builds the initial state. Transformed modes start identically zero and
/// carry the sampled sources as forcing; direct modes start from S = s0
/// with the sources as initial data. Source supports must stay at least
/// lx/2 away from the x-truncation boundaries and inside the y-range.
FieldState init_state(const GridSpec& g, Mode mode, const SourceSpec& i0, const SourceSpec& t0,
                      const ModelParams& p);

/// Reusable buffers for advance().
struct StepScratch {
    std::vector<double> bulk, bulk_s, road;
    std::vector<double> row_residual;
    std::vector<int> row_bad;
};

/// One forward-Euler step in place. 5-point Laplacian in the bulk, 3-point
/// second difference on the road, mirror ghosts at the far boundaries and a
/// second-order exchange ghost at y = 0 for road modes:
///     v_{i,-1} = v_{i,1} + (2h/d) (mu u_i - nu v_{i,0}).
/// Returns the max-norm update residual |state_new - state_old| / dt.
/// Throws blow_up_error if a non-finite value appears.
double advance(FieldState& s, const ModelParams& p, StepScratch& ws);

/// Value-semantics single step.
FieldState step(const FieldState& s, const ModelParams& p);

struct Trajectory {
    std::vector<double> snapshot_times;
    std::vector<FieldState> snapshots;
    std::vector<double> trace_times;
    std::vector<std::vector<double>> road_trace;  // u or T per record
    std::vector<std::vector<double>> wall_trace;  // v(.,0) or I(.,0) per record
    FieldState final_state;
    bool boundary_warning = false;
};

/// Integrates to t_end, recording full snapshots every snapshot_dt and the
/// road/wall traces every trace_dt (trace_dt <= 0 records every step).
/// Deterministic: identical inputs produce bit-identical trajectories.
/// Sets boundary_warning when a recorded field exceeds 1e-6 of its maximum
/// within 10 h of an x-truncation boundary.
Trajectory run(FieldState s, const ModelParams& p, double t_end, double snapshot_dt,
               double trace_dt = 0.0);

struct SteadyResult {
    FieldState state;
    bool converged = false;
    double residual = 0.0;
    double t_reached = 0.0;
};

/// Integrates a transformed-mode state until the update residual falls
/// below tol or t exceeds t_max. Non-convergence is reported through the
/// flag, not an exception.
SteadyResult solve_steady(FieldState s, const ModelParams& p, double tol = 1e-8,
                          double t_max = 500.0);

/// Long-format snapshot export, 17 significant digits.
void write_bulk_csv(const std::string& path, const GridSpec& g, const std::vector<double>& field);
void write_road_csv(const std::string& path, const GridSpec& g, const std::vector<double>& road);

}  // namespace roadsir

#endif
