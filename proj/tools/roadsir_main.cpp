// roadsir: simulator and algebraic solver for epidemic propagation
// enhanced by a line of fast diffusion.

#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "roadsir/commands.hpp"
#include "roadsir/errors.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string run_id;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "path to the JSON run configuration")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    sub->add_option("--run-id", opts.run_id, "run identifier (overrides the config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epidemic spread with a line of fast diffusion: dispersion algebra, "
                 "finite-difference simulation, and steady-state analysis"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        std::function<roadsir::CommandResult(const roadsir::RunConfig&, std::ostream&)> fn;
        CommonOpts opts;
    };
    Entry entries[] = {
        {"speed", "spreading speeds, decay exponents and reduced parameters", roadsir::cmd_speed,
         {}},
        {"simulate", "time integration with front tracking and speed regression",
         roadsir::cmd_simulate, {}},
        {"steady", "long-time steady state with plateau and decay-rate fits",
         roadsir::cmd_steady, {}},
        {"compare", "road-field vs no-road steady comparison (regions, balance)",
         roadsir::cmd_compare, {}},
        {"sweep", "repeat the speed report along one parameter axis", roadsir::cmd_sweep, {}},
        {"omega", "asymptotic reduced-speed curve tabulation", roadsir::cmd_omega, {}},
    };
    for (auto& e : entries) {
        add_common(app.add_subcommand(e.name, e.help), e.opts);
    }

    std::string lambdas;
    app.get_subcommand("omega")->add_option(
        "--lambdas", lambdas, "comma-separated lambda grid (overrides the config)");

    CLI11_PARSE(app, argc, argv);

    for (auto& e : entries) {
        if (!app.get_subcommand(e.name)->parsed()) continue;
        roadsir::RunConfig cfg;
        try {
            cfg = roadsir::load_config_file(e.opts.config_path);
            if (!e.opts.out_dir.empty()) cfg.out_dir = e.opts.out_dir;
            if (!e.opts.run_id.empty()) cfg.run_id = e.opts.run_id;
            if (!lambdas.empty()) {
                if (!cfg.omega) cfg.omega.emplace();
                cfg.omega->lambda_grid.clear();
                std::stringstream ss(lambdas);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    const double v = std::stod(tok);
                    if (v < 0.0) throw roadsir::config_error("config: --lambdas entries must be nonnegative");
                    cfg.omega->lambda_grid.push_back(v);
                }
            }
        } catch (const roadsir::config_error& err) {
            std::cerr << err.what() << "\n";
            return 2;
        } catch (const std::exception& err) {
            std::cerr << "config: " << err.what() << "\n";
            return 2;
        }
        try {
            return e.fn(cfg, std::cout).exit_code;
        } catch (const roadsir::config_error& err) {
            std::cerr << err.what() << "\n";
            return 2;
        } catch (const roadsir::blow_up_error& err) {
            std::cerr << "runtime failure: " << err.what() << " (node i=" << err.node_i
                      << ", j=" << err.node_j << ", t=" << err.time << ")\n";
            return 3;
        } catch (const std::exception& err) {
            std::cerr << "runtime failure: " << err.what() << "\n";
            return 3;
        }
    }
    return 1;
}
