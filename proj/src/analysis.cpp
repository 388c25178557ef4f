#include "roadsir/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace roadsir {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (size_t k = 0; k < n; ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    if (syy <= 0.0) {
        fit.r2 = 1.0;  // constant data, perfectly reproduced
    } else {
        double ss_res = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double e = y[k] - (fit.intercept + fit.slope * x[k]);
            ss_res += e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

}  // namespace

std::optional<double> front_position(std::span<const double> profile, double level, double x0,
                                     double h) {
    if (!(level > 0.0)) {
        throw std::invalid_argument("front_position: level must be positive");
    }
    const int n = int(profile.size());
    for (int i = n - 1; i >= 0; --i) {
        if (!std::isfinite(profile[i])) {
            throw std::invalid_argument("front_position: profile must be finite");
        }
        if (profile[i] >= level) {
            if (i == n - 1) {
                return x0 + h * i;  // the crossing sits at/beyond the last node
            }
            const double drop = profile[i] - profile[i + 1];
            const double frac = drop > 0.0 ? (profile[i] - level) / drop : 0.0;
            return x0 + h * (i + frac);
        }
    }
    return std::nullopt;
}

SpeedFit fit_speed(const FrontTrace& trace, double tail_fraction) {
    if (trace.times.size() != trace.positions.size()) {
        throw std::invalid_argument("fit_speed: times and positions differ in length");
    }
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
        throw std::invalid_argument("fit_speed: tail_fraction must lie in (0, 1]");
    }
    const size_t n = trace.times.size();
    const size_t m = size_t(std::ceil(tail_fraction * double(n)));
    if (m < 10) {
        throw std::invalid_argument("fit_speed: needs at least 10 samples in the tail window");
    }
    const size_t k0 = n - m;
    const LineFit fit = least_squares(std::span(trace.times).subspan(k0),
                                      std::span(trace.positions).subspan(k0));
    return {fit.slope, fit.r2};
}

double fit_decay(std::span<const double> profile, double x0, double h, double limit, double x1,
                 double x2) {
    if (!(x2 > x1)) {
        throw std::invalid_argument("fit_decay: empty window");
    }
    std::vector<double> xs, logs;
    const int n = int(profile.size());
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = x0 + h * i;
        if (x < x1 - 1e-12 || x > x2 + 1e-12) continue;
        const double excess = profile[i] - limit;
        if (!(excess > 0.0)) {
            throw std::invalid_argument("fit_decay: excess over the limit must stay positive on the window");
        }
        if (excess >= prev) {
            throw std::invalid_argument("fit_decay: excess must decrease across the window");
        }
        prev = excess;
        xs.push_back(x);
        logs.push_back(std::log(excess));
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("fit_decay: window covers fewer than 3 nodes");
    }
    return -least_squares(xs, logs).slope;
}

std::optional<std::pair<double, double>> auto_decay_window(std::span<const double> profile,
                                                           double x0, double h, double limit) {
    const int n = int(profile.size());
    double peak = 0.0;
    int peak_i = -1;
    for (int i = 0; i < n; ++i) {
        const double e = profile[i] - limit;
        if (e > peak) {
            peak = e;
            peak_i = i;
        }
    }
    if (peak_i < 0 || !(peak > 0.0)) return std::nullopt;
    int i1 = -1, i2 = -1;
    for (int i = peak_i; i < n; ++i) {
        const double e = profile[i] - limit;
        if (i1 < 0 && e <= 1e-2 * peak) i1 = i;
        if (e >= 1e-6 * peak) i2 = i;
    }
    if (i1 < 0 || i2 <= i1) return std::nullopt;
    return std::make_pair(x0 + h * i1, x0 + h * i2);
}

std::vector<double> peak_time_map(const std::vector<double>& times,
                                  const std::vector<std::vector<double>>& wall_trace,
                                  double v_star_value) {
    if (times.size() != wall_trace.size() || times.empty()) {
        throw std::invalid_argument("peak_time_map: trace history is inconsistent");
    }
    const double level = 0.5 * v_star_value;
    const size_t nx = wall_trace.front().size();
    std::vector<double> tau(nx, std::numeric_limits<double>::quiet_NaN());
    for (size_t i = 0; i < nx; ++i) {
        if (wall_trace[0][i] >= level) {
            tau[i] = times[0];
            continue;
        }
        for (size_t k = 1; k < times.size(); ++k) {
            const double a = wall_trace[k - 1][i];
            const double b = wall_trace[k][i];
            if (b >= level) {
                const double frac = b > a ? (level - a) / (b - a) : 1.0;
                tau[i] = times[k - 1] + frac * (times[k] - times[k - 1]);
                break;
            }
        }
    }
    return tau;
}

std::vector<double> itot(const std::vector<double>& v_field, const ModelParams& p) {
    p.validate();
    std::vector<double> out(v_field.size());
    for (size_t k = 0; k < v_field.size(); ++k) {
        out[k] = -p.s0 * std::expm1(-p.beta * v_field[k]);
    }
    return out;
}

RegionReport region_split(const std::vector<double>& v_road, const std::vector<double>& v_plain,
                          const GridSpec& g, double tol) {
    const int nx = g.nx();
    const int ny = g.ny();
    const size_t n = size_t(nx) * ny;
    if (v_road.size() != n || v_plain.size() != n) {
        throw std::invalid_argument("region_split: fields must live on the same grid");
    }
    RegionReport rep;
    rep.sign.assign(n, 0);
    auto widen = [](double box[4], double x, double y, bool first) {
        if (first) {
            box[0] = box[1] = x;
            box[2] = box[3] = y;
        } else {
            box[0] = std::min(box[0], x);
            box[1] = std::max(box[1], x);
            box[2] = std::min(box[2], y);
            box[3] = std::max(box[3], y);
        }
    };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const size_t k = size_t(j) * nx + i;
            const double diff = v_road[k] - v_plain[k];
            if (diff > tol) {
                rep.sign[k] = 1;
                widen(rep.plus_box, g.x(i), g.y(j), rep.plus_count == 0);
                ++rep.plus_count;
            } else if (diff < -tol) {
                rep.sign[k] = -1;
                widen(rep.minus_box, g.x(i), g.y(j), rep.minus_count == 0);
                ++rep.minus_count;
            }
        }
    }
    rep.plus_area = g.h * g.h * double(rep.plus_count);
    rep.minus_area = g.h * g.h * double(rep.minus_count);
    return rep;
}

std::pair<double, double> integral_balance(const SteadyResult& steady, const ModelParams& p) {
    if (!steady.converged) {
        throw std::invalid_argument("integral_balance: steady state did not converge");
    }
    const FieldState& s = steady.state;
    if (s.mode != Mode::roadfield_uv) {
        throw std::invalid_argument("integral_balance: requires a road-field state");
    }
    const GridSpec& g = s.grid;
    const int nx = g.nx();
    const int ny = g.ny();
    const double h = g.h;

    double bulk_sum = 0.0;
    double norm = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double wj = j == 0 ? 0.5 : 1.0;
        const double* row = s.bulk.data() + size_t(j) * nx;
        const double* frow = s.bulk_force.data() + size_t(j) * nx;
        double acc = 0.0, facc = 0.0;
        for (int i = 0; i < nx; ++i) {
            acc += -p.s0 * std::expm1(-p.beta * row[i]) - p.alpha * row[i] + frow[i];
            facc += frow[i];
        }
        bulk_sum += wj * acc;
        norm += wj * facc;
    }
    bulk_sum *= h * h;
    norm *= h * h;

    double road_sum = 0.0;
    for (int i = 0; i < nx; ++i) {
        road_sum += p.nu * s.bulk[i] - p.mu * s.road[i];
    }
    road_sum *= h;

    if (norm == 0.0) {
        return {bulk_sum - road_sum, road_sum};
    }
    return {(bulk_sum - road_sum) / norm, road_sum / norm};
}

double mass_total(const FieldState& s) {
    if (s.mode != Mode::roadfield_uv && s.mode != Mode::sirt_direct) {
        throw std::invalid_argument("mass_total: requires a road mode");
    }
    const int nx = s.nx();
    const int ny = s.ny();
    const double h = s.grid.h;
    double bulk = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double wj = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
        const double* row = s.bulk.data() + size_t(j) * nx;
        double acc = 0.5 * row[0] + 0.5 * row[nx - 1];
        for (int i = 1; i < nx - 1; ++i) acc += row[i];
        bulk += wj * acc;
    }
    double road = 0.5 * s.road[0] + 0.5 * s.road[nx - 1];
    for (int i = 1; i < nx - 1; ++i) road += s.road[i];
    return h * h * bulk + h * road;
}

}  // namespace roadsir
