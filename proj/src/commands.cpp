#include "roadsir/commands.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "roadsir/analysis.hpp"
#include "roadsir/dispersion.hpp"
#include "roadsir/errors.hpp"

namespace roadsir {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
}

void write_summary(const RunConfig& cfg, const ordered_json& summary) {
    std::ofstream os(out_path(cfg, cfg.run_id + ".summary.json"));
    os << summary.dump(2) << '\n';
}

std::ofstream open_csv(const RunConfig& cfg, const std::string& name, const char* header) {
    std::ofstream os(out_path(cfg, name));
    if (!os) throw std::runtime_error("cannot open output file " + name);
    os << std::setprecision(17) << header << '\n';
    return os;
}

const GridSpec& need_grid(const RunConfig& cfg) {
    if (!cfg.grid) throw config_error("config: this command needs a 'grid' section");
    return *cfg.grid;
}

const TimeConfig& need_time(const RunConfig& cfg) {
    if (!cfg.time) throw config_error("config: this command needs a 'time' section");
    return *cfg.time;
}

/// Everything the algebra alone can say about one parameter set.
struct SpeedReport {
    double r0 = 0.0;
    double dd = 0.0;
    bool spreading = false;
    double vs = kNaN;
    double csir = kNaN;
    double csirt = kNaN;
    double ratio = kNaN;
    double w_sir = kNaN;
    double lam = kNaN;
    double rho = kNaN;
    double w_bar = kNaN;
    double a_star = kNaN;
    double b_star = kNaN;
    double gamma_star = kNaN;
};

SpeedReport make_speed_report(const ModelParams& p) {
    SpeedReport r;
    r.r0 = p.r0();
    r.dd = p.D / p.d;
    r.spreading = r.r0 > 1.0;
    if (r.r0 != 1.0) {
        const DispersionTriple t = decay_exponents(p);
        r.a_star = t.a;
        r.b_star = t.b;
        r.gamma_star = t.gamma;
    } else {
        r.a_star = 0.0;
        r.b_star = 0.0;
        r.gamma_star = p.mu / p.nu;
    }
    if (r.spreading) {
        r.vs = v_star(p);
        r.csir = c_sir(p);
        r.csirt = c_sirt(p);
        r.ratio = r.csirt / r.csir;
        const ReducedParams red = reduce(p);
        r.w_sir = *red.w_sir;
        r.lam = *red.lam;
        r.rho = *red.rho;
        r.w_bar = reduced_speed(r.lam, r.rho, r.dd);
    }
    return r;
}

ordered_json speed_json(const SpeedReport& r) {
    ordered_json j;
    j["r0"] = r.r0;
    j["dichotomy"] = r.spreading ? "spreading" : "no_spreading";
    j["v_star"] = r.vs;        // far-field plateau of the cumulative potential
    j["c_SIR"] = r.csir;       // spreading speed without the road
    j["c_SIR_T"] = r.csirt;    // spreading speed along the road
    j["c_SIR_T_over_c_SIR"] = r.ratio;
    j["a_star"] = r.a_star;    // steady-state decay rate along the road
    j["b_star"] = r.b_star;    // transverse decay rate
    j["gamma_star"] = r.gamma_star;
    j["DD"] = r.dd;            // diffusivity ratio D/d
    j["lambda"] = r.lam;
    j["rho"] = r.rho;
    j["w_SIR"] = r.w_sir;      // reduced no-road speed
    j["w_bar"] = r.w_bar;      // reduced road speed
    return j;
}

/// Trace (road or wall) and level set defining the primary front.
struct FrontSpec {
    bool use_road = false;
    double level = 0.0;
};

std::optional<FrontSpec> primary_front(const ModelParams& p, Mode mode) {
    if (is_transformed(mode)) {
        if (!(p.r0() > 1.0)) return std::nullopt;
        const double vs = v_star(p);
        if (mode == Mode::roadfield_uv) {
            return FrontSpec{true, 0.5 * vs * p.nu / p.mu};
        }
        return FrontSpec{false, 0.5 * vs};
    }
    return FrontSpec{false, 1e-3 * p.s0};
}

int band_start(const GridSpec& g) {
    // first node index of the outer 10% band on the +x side (x >= 0.9 lx)
    return int(std::ceil(1.9 * g.lx / g.h));
}

/// Mean over the outer 10% x-band (both sides) of one bulk row.
double outer_band_mean(std::span<const double> row, const GridSpec& g) {
    const int nx = g.nx();
    const int k0 = band_start(g);
    double acc = 0.0;
    int n = 0;
    for (int i = k0; i < nx; ++i) {
        acc += row[i] + row[nx - 1 - i];
        n += 2;
    }
    return acc / n;
}

struct SimArtifacts {
    Trajectory traj;
    std::optional<SpeedFit> fit;
    std::optional<FrontSpec> front;
};

SimArtifacts simulate_and_fit(const RunConfig& cfg) {
    const GridSpec& g = need_grid(cfg);
    const TimeConfig& tc = need_time(cfg);
    FieldState state = init_state(g, cfg.mode, cfg.i0, cfg.t0, cfg.params);
    SimArtifacts art;
    art.traj = run(std::move(state), cfg.params, tc.t_end, tc.snapshot_dt, tc.trace_dt);
    art.front = primary_front(cfg.params, cfg.mode);
    if (art.front) {
        FrontTrace trace;
        for (size_t k = 0; k < art.traj.trace_times.size(); ++k) {
            const auto& profile =
                art.front->use_road ? art.traj.road_trace[k] : art.traj.wall_trace[k];
            const auto pos = front_position(profile, art.front->level, -g.lx, g.h);
            if (pos) {
                trace.times.push_back(art.traj.trace_times[k]);
                trace.positions.push_back(*pos);
            }
        }
        try {
            art.fit = fit_speed(trace, 0.5);
        } catch (const std::invalid_argument&) {
            // not enough crossings to regress on; reported as missing
        }
    }
    return art;
}

void write_snapshots(const RunConfig& cfg, const Trajectory& traj) {
    const GridSpec& g = traj.final_state.grid;
    for (size_t k = 0; k < traj.snapshots.size(); ++k) {
        const FieldState& s = traj.snapshots[k];
        const std::string label = time_label(traj.snapshot_times[k]);
        write_bulk_csv(out_path(cfg, cfg.run_id + "_t" + label + ".csv").string(), g, s.bulk);
        if (!s.road.empty()) {
            write_road_csv(out_path(cfg, cfg.run_id + "_road_t" + label + ".csv").string(), g,
                           s.road);
        }
        if (!s.bulk_s.empty()) {
            write_bulk_csv(out_path(cfg, cfg.run_id + "_S_t" + label + ".csv").string(), g,
                           s.bulk_s);
        }
    }
}

struct DecayFitRow {
    std::string profile;
    double x1 = kNaN, x2 = kNaN, rate = kNaN, reference = kNaN, rel_err = kNaN;
};

DecayFitRow fit_profile_decay(const std::string& name, std::span<const double> profile,
                              const GridSpec& g, double limit, double reference) {
    DecayFitRow row;
    row.profile = name;
    row.reference = reference;
    const auto window = auto_decay_window(profile, -g.lx, g.h, limit);
    if (!window) return row;
    row.x1 = window->first;
    row.x2 = window->second;
    try {
        row.rate = fit_decay(profile, -g.lx, g.h, limit, row.x1, row.x2);
        row.rel_err = std::abs(row.rate - reference) / reference;
    } catch (const std::invalid_argument&) {
        // window too noisy to fit; leave the row empty
    }
    return row;
}

unsigned sweep_thread_count(size_t entries) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("ROADSIR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = unsigned(v);
    }
    if (n == 0) n = 1;
    return unsigned(std::min<size_t>(n, entries));
}

void apply_axis(ModelParams& p, const std::string& axis, double value) {
    if (axis == "params.d") p.d = value;
    else if (axis == "params.D") p.D = value;
    else if (axis == "params.alpha") p.alpha = value;
    else if (axis == "params.beta") p.beta = value;
    else if (axis == "params.mu") p.mu = value;
    else if (axis == "params.nu") p.nu = value;
    else if (axis == "params.s0") p.s0 = value;
    else if (axis == "params.r0") p.beta = value * p.alpha / p.s0;  // derived axis
    else throw config_error("config: 'sweep.axis' must name a scalar model parameter, got '" + axis + "'");
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("config: sweep value ") + std::to_string(value) +
                           " makes parameters invalid: " + e.what());
    }
}

}  // namespace

CommandResult cmd_speed(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    const SpeedReport r = make_speed_report(cfg.params);
    ordered_json summary = speed_json(r);
    summary["run_id"] = cfg.run_id;

    auto csv = open_csv(cfg, cfg.run_id + "_speed.csv",
                        "r0,dichotomy,v_star,c_sir,c_sirt,ratio,a_star,b_star,gamma_star,dd,"
                        "lambda,rho,w_sir,w_bar");
    csv << r.r0 << ',' << (r.spreading ? "spreading" : "no_spreading") << ',' << r.vs << ','
        << r.csir << ',' << r.csirt << ',' << r.ratio << ',' << r.a_star << ',' << r.b_star << ','
        << r.gamma_star << ',' << r.dd << ',' << r.lam << ',' << r.rho << ',' << r.w_sir << ','
        << r.w_bar << '\n';

    if (!r.spreading) {
        out << "r0 = " << r.r0 << " <= 1: no spreading (the epidemic dies out; the steady state "
               "tends to 0 far from the source)\n";
        out << "decay exponents toward it: a* = " << r.a_star << ", b* = " << r.b_star
            << ", gamma* = " << r.gamma_star << "\n";
    } else {
        out << "r0       = " << r.r0 << "\n"
            << "v*       = " << r.vs << "\n"
            << "c_SIR    = " << r.csir << "\n"
            << "c_SIR^T  = " << r.csirt << "  (ratio " << r.ratio << ")\n"
            << "a*       = " << r.a_star << "  b* = " << r.b_star << "  gamma* = " << r.gamma_star
            << "\n"
            << "D/d      = " << r.dd << "  lambda = " << r.lam << "  rho = " << r.rho
            << "  w_SIR = " << r.w_sir << "  w_bar = " << r.w_bar << "\n";
    }
    write_summary(cfg, summary);
    return {0, summary};
}

CommandResult cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    const GridSpec& g = need_grid(cfg);
    const TimeConfig& tc = need_time(cfg);
    const ModelParams& p = cfg.params;

    SimArtifacts art = simulate_and_fit(cfg);
    write_snapshots(cfg, art.traj);

    // front trace (nan rows while no crossing exists yet)
    {
        auto csv = open_csv(cfg, "front_trace.csv", "t,x_front");
        for (size_t k = 0; k < art.traj.trace_times.size(); ++k) {
            double pos = kNaN;
            if (art.front) {
                const auto& profile =
                    art.front->use_road ? art.traj.road_trace[k] : art.traj.wall_trace[k];
                if (auto x = front_position(profile, art.front->level, -g.lx, g.h)) pos = *x;
            }
            csv << art.traj.trace_times[k] << ',' << pos << '\n';
        }
    }

    ordered_json summary;
    summary["run_id"] = cfg.run_id;
    summary["mode"] = std::string(mode_name(cfg.mode));
    summary["dt"] = stable_dt(g, p);
    summary["t_end"] = art.traj.final_state.t;
    summary["boundary_warning"] = art.traj.boundary_warning;
    summary["r0"] = p.r0();

    if (p.r0() > 1.0) {
        const double vs = v_star(p);
        summary["v_star"] = vs;
        summary["c_SIR"] = c_sir(p);
        if (has_road(cfg.mode)) summary["c_SIR_T"] = c_sirt(p);
        summary["predicted_quantity"] = has_road(cfg.mode) ? "c_SIR_T" : "c_SIR";
        summary["predicted_speed"] = has_road(cfg.mode) ? c_sirt(p) : c_sir(p);
        if (is_transformed(cfg.mode)) {
            const auto tau = peak_time_map(art.traj.trace_times, art.traj.wall_trace, vs);
            auto csv = open_csv(cfg, "tau_star.csv", "x,tau");
            for (int i = 0; i < g.nx(); ++i) csv << g.x(i) << ',' << tau[i] << '\n';
        }
    }
    if (art.front) {
        summary["front_on"] = art.front->use_road ? "road" : "wall";
        summary["front_level"] = art.front->level;
    }
    if (art.fit) {
        summary["measured_speed"] = art.fit->speed;
        summary["fit_r2"] = art.fit->r2;
        if (summary.contains("predicted_speed")) {
            summary["measured_over_predicted"] =
                art.fit->speed / summary["predicted_speed"].get<double>();
        }
    } else {
        summary["measured_speed"] = nullptr;
    }
    write_summary(cfg, summary);

    out << "simulated " << mode_name(cfg.mode) << " to t = " << art.traj.final_state.t
        << " (dt = " << stable_dt(g, p) << ")\n";
    if (art.fit) {
        out << "front speed = " << art.fit->speed << " (r^2 = " << art.fit->r2 << ")";
        if (summary.contains("predicted_speed")) {
            out << "  vs " << summary["predicted_quantity"].get<std::string>() << " = "
                << summary["predicted_speed"].get<double>();
        }
        out << "\n";
    } else {
        out << "no front speed measured (insufficient crossings)\n";
    }
    if (art.traj.boundary_warning) {
        out << "warning: the front approached the x-truncation boundary\n";
    }
    (void)tc;
    return {0, summary};
}

CommandResult cmd_steady(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    const GridSpec& g = need_grid(cfg);
    const ModelParams& p = cfg.params;
    if (!is_transformed(cfg.mode)) {
        throw config_error("config: 'steady' needs mode scalar_v or roadfield_uv");
    }
    FieldState state = init_state(g, cfg.mode, cfg.i0, cfg.t0, p);
    SteadyResult res = solve_steady(std::move(state), p, cfg.steady.tol, cfg.steady.t_max);

    write_bulk_csv(out_path(cfg, cfg.run_id + "_steady.csv").string(), g, res.state.bulk);
    if (!res.state.road.empty()) {
        write_road_csv(out_path(cfg, cfg.run_id + "_steady_road.csv").string(), g,
                       res.state.road);
    }

    ordered_json summary;
    summary["run_id"] = cfg.run_id;
    summary["mode"] = std::string(mode_name(cfg.mode));
    summary["converged"] = res.converged;
    summary["residual"] = res.residual;
    summary["t_reached"] = res.t_reached;
    summary["r0"] = p.r0();

    const int nx = g.nx();
    const int mid = g.ny() / 2;
    std::span<const double> mid_row(res.state.bulk.data() + size_t(mid) * nx, size_t(nx));
    std::span<const double> wall_row(res.state.bulk.data(), size_t(nx));

    std::vector<DecayFitRow> rows;
    if (p.r0() > 1.0) {
        const double vs = v_star(p);
        const double fpv = kpp_f_prime(vs, p);
        summary["v_star"] = vs;
        summary["plateau_v_mid_height"] = outer_band_mean(mid_row, g);
        summary["itot_far"] = -p.s0 * std::expm1(-p.beta * outer_band_mean(mid_row, g));
        summary["itot_limit"] = -p.s0 * std::expm1(-p.beta * vs);
        if (cfg.mode == Mode::scalar_v) {
            rows.push_back(fit_profile_decay("bulk_mid_height", mid_row, g, vs,
                                             std::sqrt(-fpv / p.d)));
        } else {
            summary["plateau_u"] = outer_band_mean(res.state.road, g);
            summary["plateau_u_expected"] = p.nu / p.mu * vs;
            const DispersionTriple t = decay_exponents(p);
            rows.push_back(fit_profile_decay("wall", wall_row, g, vs, t.a));
            rows.push_back(fit_profile_decay("road", res.state.road, g, p.nu / p.mu * vs, t.a));
        }
    } else if (p.r0() < 1.0) {
        const double fp0 = kpp_f_prime(0.0, p);
        if (cfg.mode == Mode::scalar_v) {
            rows.push_back(
                fit_profile_decay("bulk_mid_height", mid_row, g, 0.0, std::sqrt(-fp0 / p.d)));
        } else {
            const DispersionTriple t = decay_exponents(p);
            rows.push_back(fit_profile_decay("wall", wall_row, g, 0.0, t.a));
            rows.push_back(fit_profile_decay("road", res.state.road, g, 0.0, t.a));
        }
    }
    if (!rows.empty()) {
        auto csv = open_csv(cfg, "decay_fit.csv", "profile,window_x1,window_x2,rate,reference,relative_error");
        for (const auto& r : rows) {
            csv << r.profile << ',' << r.x1 << ',' << r.x2 << ',' << r.rate << ',' << r.reference
                << ',' << r.rel_err << '\n';
            summary["decay_" + r.profile] = r.rate;
            summary["decay_" + r.profile + "_reference"] = r.reference;
        }
    }
    write_summary(cfg, summary);

    out << "steady solve " << (res.converged ? "converged" : "did NOT converge") << " at t = "
        << res.t_reached << " (residual " << res.residual << ")\n";
    return {res.converged ? 0 : 3, summary};
}

CommandResult cmd_compare(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    const GridSpec& g = need_grid(cfg);
    const ModelParams& p = cfg.params;
    if (cfg.mode != Mode::roadfield_uv) {
        throw config_error("config: 'compare' needs mode roadfield_uv");
    }
    if (!cfg.t0.empty()) {
        throw config_error("config: 'compare' requires an empty t0 (the no-road benchmark has no road source)");
    }
    if (p.r0() == 1.0) {
        throw config_error("config: 'compare' is undefined at r0 = 1");
    }

    SteadyResult road = solve_steady(init_state(g, Mode::roadfield_uv, cfg.i0, cfg.t0, p), p,
                                     cfg.steady.tol, cfg.steady.t_max);
    SteadyResult plain = solve_steady(init_state(g, Mode::scalar_v, cfg.i0, SourceSpec{}, p), p,
                                      cfg.steady.tol, cfg.steady.t_max);

    ordered_json summary;
    summary["run_id"] = cfg.run_id;
    summary["r0"] = p.r0();
    summary["road_converged"] = road.converged;
    summary["road_residual"] = road.residual;
    summary["plain_converged"] = plain.converged;
    summary["plain_residual"] = plain.residual;

    if (!road.converged || !plain.converged) {
        write_summary(cfg, summary);
        out << "steady solves did not converge (road residual " << road.residual
            << ", no-road residual " << plain.residual << ")\n";
        return {3, summary};
    }

    const double tol =
        p.r0() > 1.0 ? 1e-4 * v_star(p)
                     : 1e-4 * *std::max_element(plain.state.bulk.begin(), plain.state.bulk.end());
    const RegionReport rep = region_split(road.state.bulk, plain.state.bulk, g, tol);

    {
        auto csv = open_csv(cfg, "regions.csv", "x,y,sign");
        const int nx = g.nx();
        for (int j = 0; j < g.ny(); ++j) {
            for (int i = 0; i < nx; ++i) {
                csv << g.x(i) << ',' << g.y(j) << ',' << int(rep.sign[size_t(j) * nx + i])
                    << '\n';
            }
        }
    }
    write_bulk_csv(out_path(cfg, cfg.run_id + "_itot_road.csv").string(), g,
                   itot(road.state.bulk, p));
    write_bulk_csv(out_path(cfg, cfg.run_id + "_itot_plain.csv").string(), g,
                   itot(plain.state.bulk, p));
    write_bulk_csv(out_path(cfg, cfg.run_id + "_road_steady.csv").string(), g, road.state.bulk);
    write_road_csv(out_path(cfg, cfg.run_id + "_road_steady_line.csv").string(), g,
                   road.state.road);
    write_bulk_csv(out_path(cfg, cfg.run_id + "_plain_steady.csv").string(), g,
                   plain.state.bulk);

    const auto [bulk_res, road_res] = integral_balance(road, p);
    summary["region_tol"] = tol;
    summary["e_plus_count"] = rep.plus_count;
    summary["e_minus_count"] = rep.minus_count;
    summary["e_plus_area"] = rep.plus_area;
    summary["e_minus_area"] = rep.minus_area;
    summary["e_plus_box"] = {rep.plus_box[0], rep.plus_box[1], rep.plus_box[2], rep.plus_box[3]};
    summary["e_minus_box"] = {rep.minus_box[0], rep.minus_box[1], rep.minus_box[2],
                              rep.minus_box[3]};
    summary["balance_bulk_residual"] = bulk_res;
    summary["balance_road_residual"] = road_res;

    const int mid = g.ny() / 2;
    const int nx = g.nx();
    const auto itr = itot(road.state.bulk, p);
    const auto itp = itot(plain.state.bulk, p);
    summary["itot_far_road"] =
        outer_band_mean(std::span(itr).subspan(size_t(mid) * nx, size_t(nx)), g);
    summary["itot_far_plain"] =
        outer_band_mean(std::span(itp).subspan(size_t(mid) * nx, size_t(nx)), g);
    if (p.r0() > 1.0) {
        summary["itot_limit"] = -p.s0 * std::expm1(-p.beta * v_star(p));
    } else {
        summary["itot_limit"] = 0.0;
    }
    write_summary(cfg, summary);

    out << "E+ nodes: " << rep.plus_count << " (area " << rep.plus_area << "), E- nodes: "
        << rep.minus_count << " (area " << rep.minus_area << ")\n"
        << "integral balance residuals: bulk " << bulk_res << ", road " << road_res << "\n";
    return {0, summary};
}

CommandResult cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    if (!cfg.sweep) throw config_error("config: 'sweep' section missing");
    const SweepConfig& sw = *cfg.sweep;
    {
        ModelParams probe = cfg.params;
        apply_axis(probe, sw.axis, sw.values.front());  // validates the axis path early
    }

    if (sw.simulate) {
        need_grid(cfg);
        need_time(cfg);
    }

    struct Row {
        double value = 0.0;
        SpeedReport rep;
        double measured = kNaN;
    };
    std::vector<Row> rows(sw.values.size());

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                const size_t k = next.fetch_add(1);
                if (k >= sw.values.size()) return;
                RunConfig entry = cfg;
                apply_axis(entry.params, sw.axis, sw.values[k]);
                rows[k].value = sw.values[k];
                rows[k].rep = make_speed_report(entry.params);
                if (sw.simulate) {
                    entry.run_id = cfg.run_id + "_sweep" + std::to_string(k);
                    const SimArtifacts art = simulate_and_fit(entry);
                    if (art.fit) rows[k].measured = art.fit->speed;
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(sw.values.size());  // stop handing out work
        }
    };
    const unsigned n_threads = sweep_thread_count(sw.values.size());
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < n_threads; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);

    auto csv = open_csv(cfg, cfg.run_id + "_sweep.csv",
                        "axis,value,r0,dichotomy,c_sir,c_sirt,ratio,a_star,b_star,gamma_star,dd,"
                        "lambda,rho,w_sir,w_bar,measured_speed");
    for (const auto& row : rows) {
        const SpeedReport& r = row.rep;
        csv << sw.axis << ',' << row.value << ',' << r.r0 << ','
            << (r.spreading ? "spreading" : "no_spreading") << ',' << r.csir << ',' << r.csirt
            << ',' << r.ratio << ',' << r.a_star << ',' << r.b_star << ',' << r.gamma_star << ','
            << r.dd << ',' << r.lam << ',' << r.rho << ',' << r.w_sir << ',' << r.w_bar << ','
            << row.measured << '\n';
    }

    ordered_json summary;
    summary["run_id"] = cfg.run_id;
    summary["axis"] = sw.axis;
    summary["values"] = sw.values;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json j = speed_json(row.rep);
        j["value"] = row.value;
        if (sw.simulate) j["measured_speed"] = row.measured;
        jrows.push_back(j);
    }
    summary["rows"] = jrows;
    write_summary(cfg, summary);

    out << "sweep over " << sw.axis << ": " << sw.values.size() << " entries written\n";
    return {0, summary};
}

CommandResult cmd_omega(const RunConfig& cfg, std::ostream& out) {
    write_normalized_config(cfg);
    const OmegaConfig om = cfg.omega ? *cfg.omega : OmegaConfig{};

    auto csv = open_csv(cfg, cfg.run_id + "_omega.csv", "lambda,omega,reduced_speed");
    ordered_json jrows = ordered_json::array();
    for (const double lam : om.lambda_grid) {
        const double w = omega_reduced(lam);
        const double wr = reduced_speed(lam, om.rho, om.dd);
        csv << lam << ',' << w << ',' << wr << '\n';
        jrows.push_back({{"lambda", lam}, {"omega", w}, {"reduced_speed", wr}});
        out << "lambda = " << lam << "  omega = " << w << "  reduced(dd=" << om.dd
            << ", rho=" << om.rho << ") = " << wr << "\n";
    }
    ordered_json summary;
    summary["run_id"] = cfg.run_id;
    summary["dd"] = om.dd;
    summary["rho"] = om.rho;
    summary["rows"] = jrows;
    write_summary(cfg, summary);
    return {0, summary};
}

}  // namespace roadsir
