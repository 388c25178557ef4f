"""Epidemic propagation along a line of fast diffusion.

A thin python layer over the C++ core: spreading-speed algebra
(c_sir, c_sirt, decay exponents, the reduced-speed curve), explicit
finite-difference integration of the four model forms, steady-state
solving, and trajectory analysis helpers.
"""

from ._core import (
    DispersionTriple,
    FieldState,
    GridSpec,
    Mode,
    ModelParams,
    NoSpreadingError,
    ReducedParams,
    SourceSpec,
    SteadyResult,
    Trajectory,
    __version__,
    c_sir,
    c_sirt,
    decay_exponents,
    decay_exponents_perturbed,
    f,
    f_prime,
    fit_decay,
    fit_speed,
    front_position,
    init_state,
    mass_total,
    omega_reduced,
    peak_time_map,
    reduce,
    reduced_speed,
    run,
    solve_steady,
    speed_admissible,
    stable_dt,
    step,
    v_star,
)

__all__ = [
    "DispersionTriple",
    "FieldState",
    "GridSpec",
    "Mode",
    "ModelParams",
    "NoSpreadingError",
    "ReducedParams",
    "SourceSpec",
    "SteadyResult",
    "Trajectory",
    "__version__",
    "c_sir",
    "c_sirt",
    "decay_exponents",
    "decay_exponents_perturbed",
    "f",
    "f_prime",
    "fit_decay",
    "fit_speed",
    "front_position",
    "init_state",
    "mass_total",
    "omega_reduced",
    "peak_time_map",
    "reduce",
    "reduced_speed",
    "run",
    "solve_steady",
    "speed_admissible",
    "stable_dt",
    "step",
    "v_star",
]
