#ifndef ROADSIR_COMMANDS_HPP
#define ROADSIR_COMMANDS_HPP

#include <iosfwd>

#include "json.hpp"
#include "roadsir/config.hpp"

namespace roadsir {

struct CommandResult {
    int exit_code = 0;
    nlohmann::ordered_json summary;
};

/// Algebraic speed report: c_sir, c_sirt, decay triple, reduced parameters.
CommandResult cmd_speed(const RunConfig& cfg, std::ostream& out);

/// Time integration plus front/speed/peak-time analysis and CSV export.
CommandResult cmd_simulate(const RunConfig& cfg, std::ostream& out);

/// Long-time steady solve with plateau and decay-rate reports.
CommandResult cmd_steady(const RunConfig& cfg, std::ostream& out);

/// Road-field vs no-road steady comparison: region masks, total-infected
/// maps and the stationary integral-balance residuals.
CommandResult cmd_compare(const RunConfig& cfg, std::ostream& out);

/// Repeats the speed report (and optionally a simulation) along one
/// parameter axis; rows appear in input order.
CommandResult cmd_sweep(const RunConfig& cfg, std::ostream& out);

/// Tabulates the asymptotic reduced-speed curve against its finite-ratio
/// counterpart.
CommandResult cmd_omega(const RunConfig& cfg, std::ostream& out);

}  // namespace roadsir

#endif
