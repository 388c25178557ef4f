#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "roadsir/analysis.hpp"
#include "roadsir/dispersion.hpp"
#include "roadsir/pde.hpp"
#include "reference.hpp"

using namespace roadsir;

namespace {

ModelParams base_params(double D = 10.0) {
    ModelParams p;
    p.d = 1.0;
    p.D = D;
    p.alpha = 1.0;
    p.beta = 2.0;
    p.mu = 1.0;
    p.nu = 1.0;
    p.s0 = 1.0;
    return p;
}

constexpr double kVStar = 0.79681213002002005;

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("front position") {
    const std::vector<double> steps{1.0, 1.0, 0.0, 0.0};
    auto pos = front_position(steps, 0.5, 0.0, 1.0);
    REQUIRE(pos.has_value());
    CHECK(*pos == doctest::Approx(1.5));

    // linear ramp crosses exactly where it should
    std::vector<double> ramp;
    const double h = 0.05;
    for (int i = 0; i <= 400; ++i) ramp.push_back(std::max(0.0, 1.0 - i * h / 10.0));
    auto ramp_pos = front_position(ramp, 0.5, 0.0, h);
    REQUIRE(ramp_pos.has_value());
    CHECK(*ramp_pos == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_FALSE(front_position(std::vector<double>{0.1, 0.2, 0.1}, 0.5, 0.0, 1.0).has_value());
    CHECK_THROWS_AS(front_position(steps, -1.0, 0.0, 1.0), std::invalid_argument);

    // agrees with the brute-force scan on an irregular profile
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> prof(60);
        for (auto& v : prof) v = unif(rng);
        const double level = 0.6;
        const auto mine = front_position(prof, level, -3.0, 0.1);
        const double ref = refimpl::front_scan(prof, level, -3.0, 0.1);
        if (mine) {
            CHECK(*mine == doctest::Approx(ref).epsilon(1e-13));
        } else {
            CHECK(std::isinf(ref));
        }
    }
}

TEST_CASE("speed fit") {
    FrontTrace trace;
    for (int k = 0; k < 40; ++k) {
        trace.times.push_back(0.25 * k);
        trace.positions.push_back(2.0 * 0.25 * k);
    }
    const SpeedFit exact = fit_speed(trace, 0.5);
    CHECK(exact.speed == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(exact.r2 == doctest::Approx(1.0));

    FrontTrace flat;
    for (int k = 0; k < 40; ++k) {
        flat.times.push_back(0.25 * k);
        flat.positions.push_back(7.5);
    }
    CHECK(fit_speed(flat, 0.5).speed == 0.0);

    FrontTrace tiny;
    for (int k = 0; k < 12; ++k) {
        tiny.times.push_back(k);
        tiny.positions.push_back(k);
    }
    CHECK_THROWS_AS(fit_speed(tiny, 0.5), std::invalid_argument);  // 6-sample tail
    CHECK_NOTHROW(fit_speed(tiny, 1.0));
}

TEST_CASE("decay fit on synthetic data") {
    std::vector<double> prof;
    const double x0 = 0.0, h = 0.125, limit = 0.4;
    for (int i = 0; i <= 400; ++i) prof.push_back(limit + std::exp(-0.3 * (x0 + i * h)));
    CHECK(fit_decay(prof, x0, h, limit, 5.0, 30.0) == doctest::Approx(0.3).epsilon(1e-6));

    // the auto window sits between 1e-2 and 1e-6 of the peak excess
    const auto win = auto_decay_window(prof, x0, h, limit);
    REQUIRE(win.has_value());
    CHECK(win->first == doctest::Approx(std::log(1e2) / 0.3).epsilon(0.05));
    CHECK(win->second == doctest::Approx(std::log(1e6) / 0.3).epsilon(0.05));
    CHECK(fit_decay(prof, x0, h, limit, win->first, win->second) ==
          doctest::Approx(0.3).epsilon(1e-6));

    // non-positive or non-monotone excess is rejected
    CHECK_THROWS_AS(fit_decay(prof, x0, h, 2.0, 5.0, 30.0), std::invalid_argument);
    std::vector<double> bumpy = prof;
    bumpy[100] = bumpy[99] + 1.0;
    CHECK_THROWS_AS(fit_decay(bumpy, x0, h, limit, 5.0, 30.0), std::invalid_argument);
}

TEST_CASE("peak time map") {
    // synthetic wall history: a ramp arriving later at larger |x|
    std::vector<double> times;
    std::vector<std::vector<double>> wall;
    const int nx = 21;
    for (int k = 0; k <= 100; ++k) {
        const double t = 0.1 * k;
        times.push_back(t);
        std::vector<double> row(nx);
        for (int i = 0; i < nx; ++i) {
            row[i] = std::max(0.0, t - 0.5 * i);  // node i crosses level L at t = L + i/2
        }
        wall.push_back(row);
    }
    const double vs = 1.0;
    const auto tau = peak_time_map(times, wall, vs);
    CHECK(tau[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(tau[4] == doctest::Approx(0.5 + 2.0).epsilon(1e-9));
    for (int i = 0; i + 1 < 19; ++i) {
        CHECK(tau[i] < tau[i + 1]);
    }
    CHECK(std::isnan(tau[20]));  // never reaches the level within the horizon
    CHECK(tau[0] > 0.0);
}

TEST_CASE("total infected map") {
    const ModelParams p = base_params();
    const std::vector<double> v{0.0, 1e6, kVStar};
    const auto it = itot(v, p);
    CHECK(it[0] == 0.0);
    CHECK(it[1] == doctest::Approx(p.s0).epsilon(1e-12));  // saturation
    CHECK(it[2] == doctest::Approx(p.s0 * (1.0 - std::exp(-p.beta * kVStar))).epsilon(1e-12));
}

TEST_CASE("region split") {
    GridSpec g;
    g.lx = 1.0;
    g.ly = 0.5;
    g.h = 0.5;
    const size_t n = size_t(g.nx()) * g.ny();
    std::vector<double> a(n, 1.0), b(n, 1.0);
    const RegionReport same = region_split(a, b, g, 1e-6);
    CHECK(same.plus_count == 0);
    CHECK(same.minus_count == 0);

    a[1] = 1.5;   // (x=-0.5, y=0)
    b[n - 1] = 2.0;  // road field smaller at (x=1, y=0.5)
    const RegionReport rep = region_split(a, b, g, 1e-6);
    CHECK(rep.plus_count == 1);
    CHECK(rep.minus_count == 1);
    CHECK(rep.plus_area == doctest::Approx(0.25));
    CHECK(rep.plus_box[0] == doctest::Approx(-0.5));
    CHECK(rep.minus_box[2] == doctest::Approx(0.5));
    CHECK(rep.sign[1] == 1);
    CHECK(rep.sign[n - 1] == -1);

    std::vector<double> wrong(n - 1, 0.0);
    CHECK_THROWS_AS(region_split(a, wrong, g, 1e-6), std::invalid_argument);
}

TEST_CASE("integral balance") {
    GridSpec g;
    g.lx = 10.0;
    g.ly = 6.0;
    g.h = 0.25;
    ModelParams p = base_params(2.0);

    // zero steady state with no source: both residuals vanish identically
    SteadyResult zero;
    zero.converged = true;
    zero.state = init_state(g, Mode::roadfield_uv, SourceSpec{}, SourceSpec{}, p);
    const auto [zb, zr] = integral_balance(zero, p);
    CHECK(zb == 0.0);
    CHECK(zr == 0.0);

    SteadyResult bad = zero;
    bad.converged = false;
    CHECK_THROWS_AS(integral_balance(bad, p), std::invalid_argument);

    // a genuinely converged small steady state satisfies the identity
    SourceSpec i0;
    i0.shape = SourceSpec::Shape::disk;
    i0.cy = 1.0;
    i0.radius = 1.0;
    i0.amplitude = 1.0;
    SteadyResult res = solve_steady(init_state(g, Mode::roadfield_uv, i0, SourceSpec{}, p), p,
                                    1e-10, 100.0);
    REQUIRE(res.converged);
    const auto [bulk_res, road_res] = integral_balance(res, p);
    CHECK(std::abs(bulk_res) < 1e-2);
    CHECK(std::abs(road_res) < 1e-2);
}

TEST_CASE("mass total") {
    GridSpec g;
    g.lx = 1.0;
    g.ly = 0.5;
    g.h = 0.5;
    const ModelParams p = base_params(2.0);
    FieldState s = init_state(g, Mode::roadfield_uv, SourceSpec{}, SourceSpec{}, p);
    CHECK(mass_total(s) == 0.0);

    // interior bulk node carries a full cell, road nodes carry h each
    s.bulk[size_t(1) * g.nx() + 2] = 2.0;  // interior node
    CHECK(mass_total(s) == doctest::Approx(0.25 * 2.0 * 0.5));  // h^2 * value * top-row weight
    s.bulk[size_t(1) * g.nx() + 2] = 0.0;
    s.road[2] = 3.0;
    CHECK(mass_total(s) == doctest::Approx(0.5 * 3.0));

    FieldState scalar = init_state(g, Mode::scalar_v, SourceSpec{}, SourceSpec{}, p);
    CHECK_THROWS_AS(mass_total(scalar), std::invalid_argument);
}

TEST_CASE("fitted decay of a short steady run tracks the dispersion exponent") {
    // small-domain check that the analysis chain wires together; the
    // acceptance suite runs the full-size version
    GridSpec g;
    g.lx = 30.0;
    g.ly = 8.0;
    g.h = 0.25;
    const ModelParams p = base_params(10.0);
    SourceSpec i0;
    i0.shape = SourceSpec::Shape::disk;
    i0.cy = 1.0;
    i0.radius = 1.0;
    i0.amplitude = 1.0;
    SteadyResult res = solve_steady(init_state(g, Mode::roadfield_uv, i0, SourceSpec{}, p), p,
                                    1e-10, 120.0);
    REQUIRE(res.converged);
    const DispersionTriple t = decay_exponents(p);
    const std::vector<double> wall(res.state.bulk.begin(), res.state.bulk.begin() + g.nx());
    const double rate = fit_decay(wall, -g.lx, g.h, v_star(p), 8.0, 18.0);
    CHECK(rate == doctest::Approx(t.a).epsilon(0.15));
}

TEST_SUITE_END();
