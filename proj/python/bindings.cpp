#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roadsir/analysis.hpp"
#include "roadsir/dispersion.hpp"
#include "roadsir/model.hpp"
#include "roadsir/pde.hpp"

namespace py = pybind11;
using namespace roadsir;

namespace {

py::array_t<double> bulk_array(const FieldState& s) {
    const int nx = s.nx();
    const int ny = s.ny();
    py::array_t<double> out({ny, nx});
    std::copy(s.bulk.begin(), s.bulk.end(), out.mutable_data());
    return out;
}

py::array_t<double> vector_array(const std::vector<double>& v) {
    py::array_t<double> out(py::ssize_t(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> matrix_array(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return py::array_t<double>(std::vector<py::ssize_t>{0, 0});
    py::array_t<double> out({py::ssize_t(rows.size()), py::ssize_t(rows.front().size())});
    double* ptr = out.mutable_data();
    for (const auto& row : rows) ptr = std::copy(row.begin(), row.end(), ptr);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "epidemic propagation along a line of fast diffusion: dispersion "
              "algebra, finite-difference simulation, and trajectory analysis";

    py::register_exception<no_spreading_error>(m, "NoSpreadingError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double d, double D, double alpha, double beta, double mu, double nu,
                         double s0) {
                 ModelParams p;
                 p.d = d;
                 p.D = D;
                 p.alpha = alpha;
                 p.beta = beta;
                 p.mu = mu;
                 p.nu = nu;
                 p.s0 = s0;
                 return p;
             }),
             py::arg("d") = 1.0, py::arg("D") = 1.0, py::arg("alpha") = 1.0,
             py::arg("beta") = 1.0, py::arg("mu") = 1.0, py::arg("nu") = 1.0,
             py::arg("s0") = 1.0)
        .def_readwrite("d", &ModelParams::d)
        .def_readwrite("D", &ModelParams::D)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("mu", &ModelParams::mu)
        .def_readwrite("nu", &ModelParams::nu)
        .def_readwrite("s0", &ModelParams::s0)
        .def_property_readonly("r0", &ModelParams::r0)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(d=" + std::to_string(p.d) + ", D=" + std::to_string(p.D) +
                   ", alpha=" + std::to_string(p.alpha) + ", beta=" + std::to_string(p.beta) +
                   ", mu=" + std::to_string(p.mu) + ", nu=" + std::to_string(p.nu) +
                   ", s0=" + std::to_string(p.s0) + ")";
        });

    py::class_<ReducedParams>(m, "ReducedParams")
        .def_readonly("dd", &ReducedParams::dd)
        .def_readonly("r0", &ReducedParams::r0)
        .def_readonly("mu_bar", &ReducedParams::mu_bar)
        .def_readonly("nu_bar", &ReducedParams::nu_bar)
        .def_readonly("w_sir", &ReducedParams::w_sir)
        .def_readonly("lam", &ReducedParams::lam)
        .def_readonly("rho", &ReducedParams::rho);

    m.def("f", &kpp_f, py::arg("v"), py::arg("params"),
          "KPP reaction s0*(1 - exp(-beta v)) - alpha v of the cumulative potential");
    m.def("f_prime", &kpp_f_prime, py::arg("v"), py::arg("params"));
    m.def("v_star", &v_star, py::arg("params"),
          "unique positive zero of the reaction (the far-field plateau), r0 > 1");
    m.def("c_sir", &c_sir, py::arg("params"), "spreading speed without the road");
    m.def("reduce", &reduce, py::arg("params"), "non-dimensional parameter set");

    py::class_<DispersionTriple>(m, "DispersionTriple")
        .def_readonly("a", &DispersionTriple::a)
        .def_readonly("b", &DispersionTriple::b)
        .def_readonly("gamma", &DispersionTriple::gamma)
        .def("__repr__", [](const DispersionTriple& t) {
            return "DispersionTriple(a=" + std::to_string(t.a) + ", b=" + std::to_string(t.b) +
                   ", gamma=" + std::to_string(t.gamma) + ")";
        });

    m.def("decay_exponents", &decay_exponents, py::arg("params"),
          "steady-state decay exponents (a*, b*, gamma*) toward the far-field plateau");
    m.def("decay_exponents_perturbed", &decay_exponents_perturbed, py::arg("params"),
          py::arg("zeta"), py::arg("eps"));
    m.def(
        "speed_admissible",
        [](double c, const ModelParams& p) { return speed_admissible({c, p}); },
        py::arg("c"), py::arg("params"),
        "whether plane-wave supersolutions at speed c exist");
    m.def("c_sirt", &c_sirt, py::arg("params"), "spreading speed along the road");
    m.def("omega_reduced", &omega_reduced, py::arg("lam"),
          "asymptotic reduced road speed curve; 1/2 at lam = 0, decreasing");
    m.def("reduced_speed", &reduced_speed, py::arg("lam"), py::arg("rho"), py::arg("dd"));

    py::enum_<Mode>(m, "Mode")
        .value("scalar_v", Mode::scalar_v)
        .value("roadfield_uv", Mode::roadfield_uv)
        .value("sir_direct", Mode::sir_direct)
        .value("sirt_direct", Mode::sirt_direct);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double lx, double ly, double h, double cfl) {
                 GridSpec g;
                 g.lx = lx;
                 g.ly = ly;
                 g.h = h;
                 g.cfl = cfl;
                 g.validate();
                 return g;
             }),
             py::arg("lx"), py::arg("ly"), py::arg("h"), py::arg("cfl") = 0.4)
        .def_readonly("lx", &GridSpec::lx)
        .def_readonly("ly", &GridSpec::ly)
        .def_readonly("h", &GridSpec::h)
        .def_readonly("cfl", &GridSpec::cfl)
        .def_property_readonly("nx", &GridSpec::nx)
        .def_property_readonly("ny", &GridSpec::ny)
        .def("x", &GridSpec::x, py::arg("i"))
        .def("y", &GridSpec::y, py::arg("j"));

    py::class_<SourceSpec>(m, "SourceSpec")
        .def(py::init([](const std::string& shape, std::pair<double, double> center,
                         double radius, double amplitude) {
                 SourceSpec s;
                 s.shape = shape_from_name(shape);
                 s.cx = center.first;
                 s.cy = center.second;
                 s.radius = radius;
                 s.amplitude = amplitude;
                 s.validate();
                 return s;
             }),
             py::arg("shape") = "none", py::arg("center") = std::pair<double, double>(0.0, 0.0),
             py::arg("radius") = 0.0, py::arg("amplitude") = 0.0)
        .def_readonly("radius", &SourceSpec::radius)
        .def_readonly("amplitude", &SourceSpec::amplitude);

    py::class_<FieldState>(m, "FieldState")
        .def_readonly("t", &FieldState::t)
        .def_readonly("mode", &FieldState::mode)
        .def_readonly("grid", &FieldState::grid)
        .def_property_readonly("bulk", &bulk_array, "bulk field (v or I) as an (ny, nx) array")
        .def_property_readonly("road",
                               [](const FieldState& s) { return vector_array(s.road); })
        .def_property_readonly("susceptible", [](const FieldState& s) {
            py::array_t<double> out({s.ny(), s.nx()});
            std::copy(s.bulk_s.begin(), s.bulk_s.end(), out.mutable_data());
            return out;
        });

    m.def("init_state", &init_state, py::arg("grid"), py::arg("mode"), py::arg("i0"),
          py::arg("t0"), py::arg("params"));
    m.def("stable_dt", &stable_dt, py::arg("grid"), py::arg("params"));
    m.def("step", &step, py::arg("state"), py::arg("params"), "one explicit time step");

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("boundary_warning", &Trajectory::boundary_warning)
        .def_readonly("final_state", &Trajectory::final_state)
        .def_property_readonly(
            "trace_times", [](const Trajectory& t) { return vector_array(t.trace_times); })
        .def_property_readonly(
            "snapshot_times", [](const Trajectory& t) { return vector_array(t.snapshot_times); })
        .def_property_readonly("road_trace",
                               [](const Trajectory& t) { return matrix_array(t.road_trace); })
        .def_property_readonly("wall_trace",
                               [](const Trajectory& t) { return matrix_array(t.wall_trace); });

    m.def("run", &run, py::arg("state"), py::arg("params"), py::arg("t_end"),
          py::arg("snapshot_dt"), py::arg("trace_dt") = 0.0,
          "integrate to t_end, recording snapshots and road/wall traces");

    py::class_<SteadyResult>(m, "SteadyResult")
        .def_readonly("converged", &SteadyResult::converged)
        .def_readonly("residual", &SteadyResult::residual)
        .def_readonly("t_reached", &SteadyResult::t_reached)
        .def_readonly("state", &SteadyResult::state);

    m.def("solve_steady", &solve_steady, py::arg("state"), py::arg("params"),
          py::arg("tol") = 1e-8, py::arg("t_max") = 500.0);

    m.def(
        "front_position",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> profile, double level,
           double x0, double h) -> py::object {
            const auto span = std::span<const double>(profile.data(), size_t(profile.size()));
            const auto pos = front_position(span, level, x0, h);
            return pos ? py::cast(*pos) : py::none();
        },
        py::arg("profile"), py::arg("level"), py::arg("x0"), py::arg("h"),
        "largest x where the profile crosses the level, or None");
    m.def(
        "fit_speed",
        [](py::array_t<double> times, py::array_t<double> positions, double tail_fraction) {
            FrontTrace trace;
            trace.times.assign(times.data(), times.data() + times.size());
            trace.positions.assign(positions.data(), positions.data() + positions.size());
            const SpeedFit fit = fit_speed(trace, tail_fraction);
            return py::make_tuple(fit.speed, fit.r2);
        },
        py::arg("times"), py::arg("positions"), py::arg("tail_fraction") = 0.5,
        "least-squares front speed and r^2 over the trailing window");
    m.def(
        "fit_decay",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> profile, double x0,
           double h, double limit, double x1, double x2) {
            const auto span = std::span<const double>(profile.data(), size_t(profile.size()));
            return fit_decay(span, x0, h, limit, x1, x2);
        },
        py::arg("profile"), py::arg("x0"), py::arg("h"), py::arg("limit"), py::arg("x1"),
        py::arg("x2"), "minus the log-slope of (profile - limit) over [x1, x2]");
    m.def(
        "peak_time_map",
        [](py::array_t<double> times,
           py::array_t<double, py::array::c_style | py::array::forcecast> wall, double vs) {
            std::vector<double> tv(times.data(), times.data() + times.size());
            const auto buf = wall.unchecked<2>();
            std::vector<std::vector<double>> rows(size_t(buf.shape(0)));
            for (py::ssize_t k = 0; k < buf.shape(0); ++k) {
                rows[k].assign(buf.data(k, 0), buf.data(k, 0) + buf.shape(1));
            }
            return vector_array(peak_time_map(tv, rows, vs));
        },
        py::arg("times"), py::arg("wall_trace"), py::arg("v_star"),
        "first crossing time of v_star/2 per road node (NaN if never)");
    m.def("mass_total", &mass_total, py::arg("state"));

    m.attr("__version__") = "0.1.0";
}
