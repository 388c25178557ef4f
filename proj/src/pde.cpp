#include "roadsir/pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <string>

#include "roadsir/errors.hpp"

namespace roadsir {

namespace {

inline double kpp_raw(double v, double s0, double beta, double alpha) {
    return -s0 * std::expm1(-beta * v) - alpha * v;
}

int grid_count(double length, double h, const char* name) {
    const double ratio = length / h;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw std::invalid_argument(std::string("GridSpec: ") + name +
                                    " must be a multiple of h");
    }
    return int(rounded);
}

}  // namespace

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::scalar_v: return "scalar_v";
        case Mode::roadfield_uv: return "roadfield_uv";
        case Mode::sir_direct: return "sir_direct";
        case Mode::sirt_direct: return "sirt_direct";
    }
    return "?";
}

Mode mode_from_name(std::string_view name) {
    if (name == "scalar_v") return Mode::scalar_v;
    if (name == "roadfield_uv") return Mode::roadfield_uv;
    if (name == "sir_direct") return Mode::sir_direct;
    if (name == "sirt_direct") return Mode::sirt_direct;
    throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string_view shape_name(SourceSpec::Shape s) {
    switch (s) {
        case SourceSpec::Shape::none: return "none";
        case SourceSpec::Shape::disk: return "disk-indicator";
        case SourceSpec::Shape::gaussian: return "truncated-gaussian";
    }
    return "?";
}

SourceSpec::Shape shape_from_name(std::string_view name) {
    if (name == "none") return SourceSpec::Shape::none;
    if (name == "disk-indicator") return SourceSpec::Shape::disk;
    if (name == "truncated-gaussian") return SourceSpec::Shape::gaussian;
    throw std::invalid_argument("unknown source shape: " + std::string(name));
}

int GridSpec::nx() const { return grid_count(2.0 * lx, h, "lx") + 1; }
int GridSpec::ny() const { return grid_count(ly, h, "ly") + 1; }

void GridSpec::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("GridSpec: h must be positive");
    }
    if (!(lx > 0.0) || !(ly > 0.0)) {
        throw std::invalid_argument("GridSpec: lx and ly must be positive");
    }
    grid_count(2.0 * lx, h, "lx");
    grid_count(ly, h, "ly");
    if (!(cfl > 0.0) || cfl > 0.5) {
        throw std::invalid_argument("GridSpec: cfl must lie in (0, 0.5]");
    }
}

double SourceSpec::bulk_value(double x, double y) const {
    if (empty()) return 0.0;
    const double dx = x - cx;
    const double dy = y - cy;
    const double r2 = dx * dx + dy * dy;
    if (r2 > radius * radius) return 0.0;
    if (shape == Shape::disk) return amplitude;
    const double sigma = radius / 3.0;
    return amplitude * std::exp(-r2 / (2.0 * sigma * sigma));
}

double SourceSpec::line_value(double x) const {
    if (empty()) return 0.0;
    const double dx = x - cx;
    if (std::abs(dx) > radius) return 0.0;
    if (shape == Shape::disk) return amplitude;
    const double sigma = radius / 3.0;
    return amplitude * std::exp(-dx * dx / (2.0 * sigma * sigma));
}

void SourceSpec::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("SourceSpec: amplitude must be nonnegative and finite");
    }
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("SourceSpec: radius must be nonnegative and finite");
    }
    if (!std::isfinite(cx) || !std::isfinite(cy)) {
        throw std::invalid_argument("SourceSpec: center must be finite");
    }
}

double stable_dt(const GridSpec& g, const ModelParams& p) {
    return g.cfl * g.h * g.h / (4.0 * std::max(p.d, p.D));
}

void validate_pde_params(const ModelParams& p, Mode mode) {
    if (!(p.d > 0.0) || !std::isfinite(p.d)) {
        throw std::invalid_argument("pde: bulk diffusivity d must be positive");
    }
    const double rates[] = {p.D, p.alpha, p.beta, p.mu, p.nu};
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("pde: rates must be nonnegative and finite");
        }
    }
    if (!is_transformed(mode) && (!(p.s0 > 0.0) || !std::isfinite(p.s0))) {
        throw std::invalid_argument("pde: direct modes need s0 > 0");
    }
    if (!(p.s0 >= 0.0) || !std::isfinite(p.s0)) {
        throw std::invalid_argument("pde: s0 must be nonnegative and finite");
    }
}

FieldState init_state(const GridSpec& g, Mode mode, const SourceSpec& i0, const SourceSpec& t0,
                      const ModelParams& p) {
    g.validate();
    validate_pde_params(p, mode);
    i0.validate();
    t0.validate();
    if (!i0.empty()) {
        if (std::abs(i0.cx) + i0.radius > 0.5 * g.lx + 1e-12) {
            throw std::invalid_argument(
                "init_state: i0 support must stay at least lx/2 away from the x boundaries");
        }
        if (i0.cy - i0.radius > g.ly + 1e-12) {
            throw std::invalid_argument("init_state: i0 support lies entirely above the grid");
        }
    }
    if (!t0.empty()) {
        if (!has_road(mode)) {
            throw std::invalid_argument("init_state: t0 source requires a road mode");
        }
        if (std::abs(t0.cx) + t0.radius > 0.5 * g.lx + 1e-12) {
            throw std::invalid_argument(
                "init_state: t0 support must stay at least lx/2 away from the x boundaries");
        }
    }

    FieldState s;
    s.mode = mode;
    s.grid = g;
    s.t = 0.0;
    const int nx = g.nx();
    const int ny = g.ny();
    s.bulk.assign(size_t(nx) * ny, 0.0);

    std::vector<double> i0_samples(size_t(nx) * ny, 0.0);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            i0_samples[size_t(j) * nx + i] = i0.bulk_value(g.x(i), g.y(j));
        }
    }

    if (is_transformed(mode)) {
        s.bulk_force = std::move(i0_samples);
        if (mode == Mode::roadfield_uv) {
            s.road.assign(nx, 0.0);
            s.road_force.assign(nx, 0.0);
            for (int i = 0; i < nx; ++i) s.road_force[i] = t0.line_value(g.x(i));
        }
    } else {
        s.bulk = std::move(i0_samples);
        s.bulk_s.assign(size_t(nx) * ny, p.s0);
        if (mode == Mode::sirt_direct) {
            s.road.assign(nx, 0.0);
            for (int i = 0; i < nx; ++i) s.road[i] = t0.line_value(g.x(i));
        }
    }
    return s;
}

double advance(FieldState& s, const ModelParams& p, StepScratch& ws) {
    const GridSpec& g = s.grid;
    const int nx = g.nx();
    const int ny = g.ny();
    const size_t n_bulk = size_t(nx) * ny;
    if (s.bulk.size() != n_bulk) {
        throw std::invalid_argument("advance: bulk array does not match the grid");
    }
    validate_pde_params(p, s.mode);

    const double h = g.h;
    const double h2 = h * h;
    const double dt = stable_dt(g, p);
    const bool road = has_road(s.mode);
    const bool direct = !is_transformed(s.mode);
    if (road && s.road.size() != size_t(nx)) {
        throw std::invalid_argument("advance: road array does not match the grid");
    }
    if (direct && s.bulk_s.size() != n_bulk) {
        throw std::invalid_argument("advance: susceptible array does not match the grid");
    }

    ws.bulk.resize(n_bulk);
    if (direct) ws.bulk_s.resize(n_bulk);
    if (road) ws.road.resize(nx);
    ws.row_residual.assign(ny, 0.0);
    ws.row_bad.assign(ny, -1);

    const double* v = s.bulk.data();
    const double* S = direct ? s.bulk_s.data() : nullptr;
    const double* u = road ? s.road.data() : nullptr;
    const double* fbulk = s.bulk_force.empty() ? nullptr : s.bulk_force.data();
    const double* froad = s.road_force.empty() ? nullptr : s.road_force.data();
    double* nv = ws.bulk.data();
    double* nS = direct ? ws.bulk_s.data() : nullptr;

    double road_residual = 0.0;
    int road_bad = -1;
    if (road) {
        // 1D road sweep first: it reads the old wall row.
        for (int i = 0; i < nx; ++i) {
            const int im = i == 0 ? 1 : i - 1;
            const int ip = i == nx - 1 ? nx - 2 : i + 1;
            const double lap = (u[im] - 2.0 * u[i] + u[ip]) / h2;
            const double exch = p.nu * v[i] - p.mu * u[i];
            const double force = froad ? froad[i] : 0.0;
            const double val = u[i] + dt * (p.D * lap + exch + force);
            ws.road[i] = val;
            if (!std::isfinite(val) && road_bad < 0) road_bad = i;
            road_residual = std::max(road_residual, std::abs(val - u[i]));
        }
    }

    const double d = p.d, alpha = p.alpha, beta = p.beta, s0 = p.s0, mu = p.mu, nu = p.nu;
    const double ghost_scale = road ? 2.0 * h / d : 0.0;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const int jm = j == 0 ? 1 : j - 1;
        const int jp = j == ny - 1 ? ny - 2 : j + 1;
        const double* row = v + size_t(j) * nx;
        const double* rm = v + size_t(jm) * nx;
        const double* rp = v + size_t(jp) * nx;
        double* out = nv + size_t(j) * nx;
        double rres = 0.0;
        int rbad = -1;
        for (int i = 0; i < nx; ++i) {
            const int im = i == 0 ? 1 : i - 1;
            const int ip = i == nx - 1 ? nx - 2 : i + 1;
            const double c = row[i];
            double lap = row[im] + row[ip] + rm[i] + rp[i] - 4.0 * c;
            if (road && j == 0) {
                // ghost row below the road from the exchange flux condition
                lap += ghost_scale * (mu * u[i] - nu * c);
            }
            double rhs = d * lap / h2;
            if (direct) {
                const size_t idx = size_t(j) * nx + i;
                const double sus = S[idx];
                rhs += (beta * sus - alpha) * c;
                const double ns_val = sus - dt * beta * sus * c;
                nS[idx] = ns_val;
                if (!std::isfinite(ns_val) && rbad < 0) rbad = i;
                rres = std::max(rres, std::abs(ns_val - sus));
            } else {
                rhs += kpp_raw(c, s0, beta, alpha);
                if (fbulk) rhs += fbulk[size_t(j) * nx + i];
            }
            const double val = c + dt * rhs;
            out[i] = val;
            if (!std::isfinite(val) && rbad < 0) rbad = i;
            rres = std::max(rres, std::abs(val - c));
        }
        ws.row_residual[j] = rres;
        ws.row_bad[j] = rbad;
    }

    if (road_bad >= 0) {
        throw blow_up_error("time step produced a non-finite road value", road_bad, -1, s.t + dt);
    }
    for (int j = 0; j < ny; ++j) {
        if (ws.row_bad[j] >= 0) {
            throw blow_up_error("time step produced a non-finite bulk value", ws.row_bad[j], j,
                                s.t + dt);
        }
    }

    double residual = road_residual;
    for (int j = 0; j < ny; ++j) residual = std::max(residual, ws.row_residual[j]);

    s.bulk.swap(ws.bulk);
    if (direct) s.bulk_s.swap(ws.bulk_s);
    if (road) s.road.swap(ws.road);
    s.t += dt;
    return residual / dt;
}

FieldState step(const FieldState& s, const ModelParams& p) {
    FieldState out = s;
    StepScratch ws;
    advance(out, p, ws);
    return out;
}

namespace {

void record_trace(Trajectory& traj, const FieldState& s) {
    traj.trace_times.push_back(s.t);
    const int nx = s.nx();
    traj.wall_trace.emplace_back(s.bulk.begin(), s.bulk.begin() + nx);
    if (has_road(s.mode)) {
        traj.road_trace.push_back(s.road);
    }
    // warn if a front-scale value has reached the 10h band at the x edges
    double vmax = 0.0;
    for (double x : s.bulk) vmax = std::max(vmax, x);
    const double lvl = 1e-3 * vmax;
    if (lvl > 0.0 && !traj.boundary_warning) {
        const int band = std::min(10, nx / 2);
        const int ny = s.ny();
        for (int j = 0; j < ny && !traj.boundary_warning; ++j) {
            const double* row = s.bulk.data() + size_t(j) * nx;
            for (int k = 0; k < band; ++k) {
                if (row[k] > lvl || row[nx - 1 - k] > lvl) {
                    traj.boundary_warning = true;
                    break;
                }
            }
        }
    }
}

}  // namespace

Trajectory run(FieldState s, const ModelParams& p, double t_end, double snapshot_dt,
               double trace_dt) {
    if (!(t_end >= 0.0)) {
        throw std::invalid_argument("run: t_end must be nonnegative");
    }
    if (!(snapshot_dt > 0.0)) {
        throw std::invalid_argument("run: snapshot_dt must be positive");
    }
    const double dt = stable_dt(s.grid, p);
    const long long n_steps = t_end > 0.0 ? (long long)std::ceil(t_end / dt - 1e-9) : 0;
    const long long snap_stride = std::max(1LL, (long long)std::llround(snapshot_dt / dt));
    const long long trace_stride =
        trace_dt <= 0.0 ? 1 : std::max(1LL, (long long)std::llround(trace_dt / dt));

    Trajectory traj;
    traj.snapshot_times.push_back(s.t);
    traj.snapshots.push_back(s);
    record_trace(traj, s);

    StepScratch ws;
    for (long long n = 1; n <= n_steps; ++n) {
        advance(s, p, ws);
        if (n % trace_stride == 0 || n == n_steps) {
            record_trace(traj, s);
        }
        if (n % snap_stride == 0 || n == n_steps) {
            traj.snapshot_times.push_back(s.t);
            traj.snapshots.push_back(s);
        }
    }
    traj.final_state = std::move(s);
    return traj;
}

SteadyResult solve_steady(FieldState s, const ModelParams& p, double tol, double t_max) {
    if (!is_transformed(s.mode)) {
        throw std::invalid_argument("solve_steady: requires scalar_v or roadfield_uv mode");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("solve_steady: tol must be positive");
    }
    const double dt = stable_dt(s.grid, p);
    const long long n_max = (long long)std::ceil(t_max / dt);
    StepScratch ws;
    double residual = std::numeric_limits<double>::infinity();
    for (long long n = 0; n < n_max; ++n) {
        residual = advance(s, p, ws);
        if (residual < tol) {
            const double t = s.t;
            return {std::move(s), true, residual, t};
        }
    }
    const double t = s.t;
    return {std::move(s), false, residual, t};
}

void write_bulk_csv(const std::string& path, const GridSpec& g, const std::vector<double>& field) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << std::setprecision(17);
    os << "x,y,value\n";
    const int nx = g.nx();
    const int ny = g.ny();
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            os << g.x(i) << ',' << g.y(j) << ',' << field[size_t(j) * nx + i] << '\n';
        }
    }
}

void write_road_csv(const std::string& path, const GridSpec& g, const std::vector<double>& road) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << std::setprecision(17);
    os << "x,value\n";
    const int nx = g.nx();
    for (int i = 0; i < nx; ++i) {
        os << g.x(i) << ',' << road[i] << '\n';
    }
}

}  // namespace roadsir
