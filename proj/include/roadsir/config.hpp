#ifndef ROADSIR_CONFIG_HPP
#define ROADSIR_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "roadsir/model.hpp"
#include "roadsir/pde.hpp"

namespace roadsir {

struct TimeConfig {
    double t_end = 0.0;
    double snapshot_dt = 0.0;
    double trace_dt = 0.0;
};

struct SteadyConfig {
    double tol = 1e-8;
    double t_max = 500.0;
};

struct SweepConfig {
    std::string axis;
    std::vector<double> values;
    bool simulate = false;
};

struct OmegaConfig {
    std::vector<double> lambda_grid{0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
    double dd = 1e4;
    double rho = 1e-3;
};

/// A fully validated run description. grid/time are optional because the
/// algebra-only subcommands do not need them; commands that do simulate
/// reject configs lacking them.
struct RunConfig {
    std::string run_id;
    Mode mode = Mode::scalar_v;
    std::string out_dir = ".";
    ModelParams params;
    std::optional<GridSpec> grid;
    SourceSpec i0;
    SourceSpec t0;
    std::optional<TimeConfig> time;
    SteadyConfig steady;
    std::optional<SweepConfig> sweep;
    std::optional<OmegaConfig> omega;
};

/// Parses and validates a configuration document. Unknown keys, missing
/// required keys and out-of-range values raise config_error naming the
/// offending key path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// The normalized document: every default made explicit. Re-parsing it
/// yields an equivalent RunConfig.
nlohmann::ordered_json normalized_json(const RunConfig& cfg);

/// Writes <run_id>.config.json into the output directory.
void write_normalized_config(const RunConfig& cfg);

}  // namespace roadsir

#endif
