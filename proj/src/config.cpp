#include "roadsir/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "roadsir/errors.hpp"

namespace roadsir {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            fail("unknown key '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
        }
    }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail("missing required key '" + (path.empty() ? key : path + "." + key) + "'");
    }
    return *it;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) fail("'" + path + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail("'" + path + "' must be finite");
    return x;
}

double number_or(const json& obj, const std::string& path, const std::string& key,
                 double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return number_at(*it, path + "." + key);
}

std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) fail("'" + path + "' must be a string");
    return v.get<std::string>();
}

ModelParams parse_params(const json& obj) {
    check_keys(obj, "params", {"d", "D", "alpha", "beta", "mu", "nu", "s0"});
    ModelParams p;
    struct Entry {
        const char* key;
        double* slot;
    } entries[] = {{"d", &p.d},   {"D", &p.D},   {"alpha", &p.alpha}, {"beta", &p.beta},
                   {"mu", &p.mu}, {"nu", &p.nu}, {"s0", &p.s0}};
    for (auto& e : entries) {
        const std::string path = std::string("params.") + e.key;
        *e.slot = number_at(require(obj, "params", e.key), path);
        if (!(*e.slot > 0.0)) fail("'" + path + "' must be strictly positive");
    }
    return p;
}

GridSpec parse_grid(const json& obj) {
    check_keys(obj, "grid", {"lx", "ly", "h", "cfl"});
    GridSpec g;
    g.lx = number_at(require(obj, "grid", "lx"), "grid.lx");
    g.ly = number_at(require(obj, "grid", "ly"), "grid.ly");
    g.h = number_at(require(obj, "grid", "h"), "grid.h");
    g.cfl = number_or(obj, "grid", "cfl", 0.4);
    try {
        g.validate();
    } catch (const std::exception& e) {
        fail(std::string("grid: ") + e.what());
    }
    return g;
}

SourceSpec parse_source(const json& obj, const std::string& path) {
    check_keys(obj, path, {"shape", "center", "radius", "amplitude"});
    SourceSpec s;
    auto it = obj.find("shape");
    if (it != obj.end()) {
        try {
            s.shape = shape_from_name(string_at(*it, path + ".shape"));
        } catch (const std::invalid_argument& e) {
            fail("'" + path + ".shape': " + e.what());
        }
    }
    auto c = obj.find("center");
    if (c != obj.end()) {
        if (!c->is_array() || c->size() != 2) {
            fail("'" + path + ".center' must be [x, y]");
        }
        s.cx = number_at((*c)[0], path + ".center[0]");
        s.cy = number_at((*c)[1], path + ".center[1]");
    }
    s.radius = number_or(obj, path, "radius", 0.0);
    s.amplitude = number_or(obj, path, "amplitude", 0.0);
    if (s.radius < 0.0) fail("'" + path + ".radius' must be nonnegative");
    if (s.amplitude < 0.0) fail("'" + path + ".amplitude' must be nonnegative");
    return s;
}

void check_source_fits(const SourceSpec& s, const GridSpec& g, const std::string& path,
                       bool line_source) {
    if (s.empty()) return;
    if (std::abs(s.cx) + s.radius > 0.5 * g.lx + 1e-12) {
        fail("'" + path + "': support must stay at least lx/2 away from the x boundaries");
    }
    if (!line_source && s.cy - s.radius > g.ly + 1e-12) {
        fail("'" + path + "': support lies entirely above the grid");
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) fail("document must be a JSON object");
    check_keys(doc, "",
               {"run_id", "mode", "out_dir", "params", "grid", "sources", "time", "steady",
                "sweep", "omega"});

    RunConfig cfg;
    cfg.run_id = string_at(require(doc, "", "run_id"), "run_id");
    if (cfg.run_id.empty() || cfg.run_id.find('/') != std::string::npos) {
        fail("'run_id' must be a nonempty name without '/'");
    }
    try {
        cfg.mode = mode_from_name(string_at(require(doc, "", "mode"), "mode"));
    } catch (const std::invalid_argument& e) {
        fail(std::string("'mode': ") + e.what());
    }
    if (auto it = doc.find("out_dir"); it != doc.end()) {
        cfg.out_dir = string_at(*it, "out_dir");
    }

    cfg.params = parse_params(require(doc, "", "params"));

    if (auto it = doc.find("grid"); it != doc.end()) {
        cfg.grid = parse_grid(*it);
    }

    if (auto it = doc.find("sources"); it != doc.end()) {
        check_keys(*it, "sources", {"i0", "t0"});
        if (auto s = it->find("i0"); s != it->end()) {
            cfg.i0 = parse_source(*s, "sources.i0");
        }
        if (auto s = it->find("t0"); s != it->end()) {
            cfg.t0 = parse_source(*s, "sources.t0");
        }
    }
    if (!cfg.t0.empty() && !has_road(cfg.mode)) {
        fail("'sources.t0': a road source needs a road mode");
    }
    if (cfg.grid) {
        check_source_fits(cfg.i0, *cfg.grid, "sources.i0", false);
        check_source_fits(cfg.t0, *cfg.grid, "sources.t0", true);
    }

    if (auto it = doc.find("time"); it != doc.end()) {
        check_keys(*it, "time", {"t_end", "snapshot_dt", "trace_dt"});
        TimeConfig t;
        t.t_end = number_at(require(*it, "time", "t_end"), "time.t_end");
        if (!(t.t_end >= 0.0)) fail("'time.t_end' must be nonnegative");
        t.snapshot_dt = number_or(*it, "time", "snapshot_dt", t.t_end > 0.0 ? t.t_end : 1.0);
        if (!(t.snapshot_dt > 0.0)) fail("'time.snapshot_dt' must be positive");
        t.trace_dt = number_or(*it, "time", "trace_dt", t.t_end / 1200.0);
        if (!(t.trace_dt >= 0.0)) fail("'time.trace_dt' must be nonnegative");
        cfg.time = t;
    }

    if (auto it = doc.find("steady"); it != doc.end()) {
        check_keys(*it, "steady", {"tol", "t_max"});
        cfg.steady.tol = number_or(*it, "steady", "tol", 1e-8);
        cfg.steady.t_max = number_or(*it, "steady", "t_max", 500.0);
        if (!(cfg.steady.tol > 0.0)) fail("'steady.tol' must be positive");
        if (!(cfg.steady.t_max > 0.0)) fail("'steady.t_max' must be positive");
    }

    if (auto it = doc.find("sweep"); it != doc.end()) {
        check_keys(*it, "sweep", {"axis", "values", "simulate"});
        SweepConfig sw;
        sw.axis = string_at(require(*it, "sweep", "axis"), "sweep.axis");
        const json& vals = require(*it, "sweep", "values");
        if (!vals.is_array() || vals.empty()) fail("'sweep.values' must be a nonempty array");
        for (size_t k = 0; k < vals.size(); ++k) {
            sw.values.push_back(number_at(vals[k], "sweep.values[" + std::to_string(k) + "]"));
        }
        if (auto b = it->find("simulate"); b != it->end()) {
            if (!b->is_boolean()) fail("'sweep.simulate' must be a boolean");
            sw.simulate = b->get<bool>();
        }
        cfg.sweep = sw;
    }

    if (auto it = doc.find("omega"); it != doc.end()) {
        check_keys(*it, "omega", {"lambda_grid", "dd", "rho"});
        OmegaConfig om;
        if (auto g = it->find("lambda_grid"); g != it->end()) {
            if (!g->is_array() || g->empty()) fail("'omega.lambda_grid' must be a nonempty array");
            om.lambda_grid.clear();
            for (size_t k = 0; k < g->size(); ++k) {
                const double v =
                    number_at((*g)[k], "omega.lambda_grid[" + std::to_string(k) + "]");
                if (v < 0.0) fail("'omega.lambda_grid' entries must be nonnegative");
                om.lambda_grid.push_back(v);
            }
        }
        om.dd = number_or(*it, "omega", "dd", 1e4);
        om.rho = number_or(*it, "omega", "rho", 1e-3);
        if (!(om.dd > 0.0)) fail("'omega.dd' must be positive");
        if (om.rho < 0.0) fail("'omega.rho' must be nonnegative");
        cfg.omega = om;
    }

    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

nlohmann::ordered_json normalized_json(const RunConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["run_id"] = cfg.run_id;
    doc["mode"] = std::string(mode_name(cfg.mode));
    doc["out_dir"] = cfg.out_dir;
    doc["params"] = {{"d", cfg.params.d}, {"D", cfg.params.D},   {"alpha", cfg.params.alpha},
                     {"beta", cfg.params.beta}, {"mu", cfg.params.mu}, {"nu", cfg.params.nu},
                     {"s0", cfg.params.s0}};
    if (cfg.grid) {
        doc["grid"] = {{"lx", cfg.grid->lx}, {"ly", cfg.grid->ly}, {"h", cfg.grid->h},
                       {"cfl", cfg.grid->cfl}};
    }
    auto source_json = [](const SourceSpec& s) {
        return nlohmann::ordered_json{{"shape", std::string(shape_name(s.shape))},
                                      {"center", {s.cx, s.cy}},
                                      {"radius", s.radius},
                                      {"amplitude", s.amplitude}};
    };
    doc["sources"] = {{"i0", source_json(cfg.i0)}, {"t0", source_json(cfg.t0)}};
    if (cfg.time) {
        doc["time"] = {{"t_end", cfg.time->t_end},
                       {"snapshot_dt", cfg.time->snapshot_dt},
                       {"trace_dt", cfg.time->trace_dt}};
    }
    doc["steady"] = {{"tol", cfg.steady.tol}, {"t_max", cfg.steady.t_max}};
    if (cfg.sweep) {
        doc["sweep"] = {{"axis", cfg.sweep->axis},
                        {"values", cfg.sweep->values},
                        {"simulate", cfg.sweep->simulate}};
    }
    if (cfg.omega) {
        doc["omega"] = {{"lambda_grid", cfg.omega->lambda_grid},
                        {"dd", cfg.omega->dd},
                        {"rho", cfg.omega->rho}};
    }
    return doc;
}

void write_normalized_config(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / (cfg.run_id + ".config.json");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    os << normalized_json(cfg).dump(2) << '\n';
}

}  // namespace roadsir
