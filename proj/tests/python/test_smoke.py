"""Smoke tests for the python bindings: the algebra matches known values
and a short simulation behaves."""

import math

import numpy as np
import pytest

import roadsir


@pytest.fixture
def params():
    return roadsir.ModelParams(d=1.0, D=10.0, alpha=1.0, beta=2.0, mu=1.0, nu=1.0, s0=1.0)


def test_model_basics(params):
    assert params.r0 == pytest.approx(2.0)
    assert roadsir.f(0.0, params) == 0.0
    assert roadsir.f(0.5, params) == pytest.approx(0.13212055882855768, rel=1e-12)
    vs = roadsir.v_star(params)
    assert vs == pytest.approx(0.79681213002002005, rel=1e-10)
    assert roadsir.f_prime(vs, params) == pytest.approx(-0.59362426004004009, rel=1e-9)
    assert roadsir.c_sir(params) == pytest.approx(2.0)

    sub = roadsir.ModelParams(beta=0.5)
    with pytest.raises(roadsir.NoSpreadingError):
        roadsir.v_star(sub)


def test_reduced_parameters(params):
    red = roadsir.reduce(params)
    assert red.dd == pytest.approx(10.0)
    assert red.w_sir == pytest.approx(2.0)
    assert red.lam == pytest.approx(0.5)
    assert red.rho == pytest.approx(2.0)


def test_dispersion(params):
    t = roadsir.decay_exponents(params)
    assert t.a == pytest.approx(0.20640937030786021, rel=1e-8)
    assert t.b == pytest.approx(0.74230683136365701, rel=1e-8)

    ct = roadsir.c_sirt(params)
    assert ct == pytest.approx(3.206357023679, rel=1e-6)
    assert ct > roadsir.c_sir(params)

    slow = roadsir.ModelParams(d=1.0, D=1.5, alpha=1.0, beta=2.0)
    assert roadsir.c_sirt(slow) == pytest.approx(2.0, rel=1e-6)

    assert not roadsir.speed_admissible(1.9, params)
    assert roadsir.speed_admissible(5.0, params)


def test_c_sirt_monotone_in_D():
    prev = 0.0
    for D in (2.0, 4.0, 8.0, 16.0):
        p = roadsir.ModelParams(d=1.0, D=D, alpha=1.0, beta=2.0)
        c = roadsir.c_sirt(p)
        assert c >= prev
        prev = c


def test_omega_curve():
    assert roadsir.omega_reduced(0.0) == pytest.approx(0.5, abs=1e-6)
    assert roadsir.omega_reduced(1.0) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-6)
    vals = [roadsir.omega_reduced(lam) for lam in (0.0, 0.5, 1.0, 2.0, 5.0)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert roadsir.reduced_speed(0.5, 1e-3, 1e4) == pytest.approx(vals[1], rel=0.02)


def test_short_simulation(params):
    grid = roadsir.GridSpec(lx=15.0, ly=4.0, h=0.25)
    i0 = roadsir.SourceSpec(shape="disk-indicator", center=(0.0, 1.0), radius=1.0, amplitude=1.0)
    t0 = roadsir.SourceSpec()
    state = roadsir.init_state(grid, roadsir.Mode.roadfield_uv, i0, t0, params)
    traj = roadsir.run(state, params, t_end=3.0, snapshot_dt=1.0, trace_dt=0.05)

    wall = traj.wall_trace
    road = traj.road_trace
    assert wall.shape[0] == traj.trace_times.shape[0]
    assert wall.shape[1] == grid.nx
    assert road.shape == wall.shape

    bulk = traj.final_state.bulk
    assert bulk.shape == (grid.ny, grid.nx)
    assert (bulk >= 0.0).all()
    assert np.isfinite(bulk).all()
    # growing epidemic potential
    assert bulk.max() > 0.1
    assert (wall[-1] >= wall[0]).all()

    # the measured front moves at a sensible speed even on this tiny run
    times, positions = [], []
    vs = roadsir.v_star(params)
    for k in range(wall.shape[0]):
        x = roadsir.front_position(wall[k], 0.5 * vs, -grid.lx, grid.h)
        if x is not None:
            times.append(traj.trace_times[k])
            positions.append(x)
    speed, r2 = roadsir.fit_speed(np.array(times), np.array(positions), 0.5)
    assert 0.5 < speed < 6.0
    assert r2 > 0.9


def test_steady_and_mass(params):
    grid = roadsir.GridSpec(lx=10.0, ly=3.0, h=0.25)
    i0 = roadsir.SourceSpec(shape="disk-indicator", center=(0.0, 1.0), radius=1.0, amplitude=1.0)
    none = roadsir.SourceSpec()
    state = roadsir.init_state(grid, roadsir.Mode.roadfield_uv, i0, none, params)
    res = roadsir.solve_steady(state, params, tol=1e-8, t_max=60.0)
    assert res.converged
    assert res.state.bulk.max() > roadsir.v_star(params)

    # conservation of the exchange-coupled diffusion pair
    cons = roadsir.ModelParams(d=1.0, D=2.0, alpha=1e-12, beta=1e-12, mu=0.8, nu=1.3, s0=1.0)
    st = roadsir.init_state(grid, roadsir.Mode.sirt_direct, i0, none, cons)
    m0 = roadsir.mass_total(st)
    traj = roadsir.run(st, cons, t_end=1.0, snapshot_dt=1.0)
    assert roadsir.mass_total(traj.final_state) == pytest.approx(m0, rel=1e-9)
