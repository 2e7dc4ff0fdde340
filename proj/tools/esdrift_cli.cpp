// Command-line front end for the (1+1)-ES drift experiments.
//
//   esdrift <subcommand> [--config file.ini] [--seed N] [--out path] [--d 4 8 16] ...
//
// Exit codes: 0 success, 2 configuration error, 1 runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "esdrift/errors.hpp"
#include "esdrift/experiments.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
        path_ = path;
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }

    void finish() {
        stream().flush();
        if (file_ && !*file_) throw std::runtime_error("write failed for '" + path_ + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

}  // namespace

int main(int argc, char** argv) {
    using esdrift::ExperimentConfig;

    CLI::App app{"(1+1)-ES with one-fifth success rule: drift analysis experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML experiment manifest (flags override it)");

    ExperimentConfig cfg;
    std::string out_path;
    app.add_option("--seed", cfg.seed, "Master seed");
    app.add_option("--out", out_path, "Output path (default stdout)");
    app.add_option("--d", cfg.dims, "Dimension list")->expected(1, -1);
    app.add_option("--alpha", cfg.alpha, "Step-size multiplier (> 1)");
    app.add_option("--p-u", cfg.psucc_at_upper, "Success probability at the upper band edge");
    app.add_option("--p-l", cfg.psucc_at_lower, "Success probability at the lower band edge");
    app.add_option("--epsilon", cfg.epsilon, "Target distance to the optimum");
    app.add_option("--m0-norm", cfg.m0_norm, "Initial distance to the optimum");
    app.add_option("--sigma-bar0", cfg.sigma_bar0, "Initial normalized step size");
    app.add_option("--replicates", cfg.replicates, "Independent runs per configuration");
    app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples per estimate");
    app.add_option("--eps-sweep", cfg.eps_sweep, "Targets for the epsilon sweep")->expected(1, -1);
    app.add_option("--sweep-d", cfg.sweep_dim, "Dimension of the epsilon sweep");
    app.add_option("--grid-points", cfg.grid_points, "sigma_bar grid size for drift-map");
    app.add_option("--curve-points", cfg.curve_points, "sigma_bar grid size for success-curve");
    app.add_option("--max-iter", cfg.max_iter, "Iteration cap per run (censoring horizon)");
    app.add_option("--record-every", cfg.record_every, "Trace thinning for `run` (0 = ends only)");
    app.add_option("--threads", cfg.workers, "Worker threads (0 = hardware concurrency)");

    auto* success_curve = app.add_subcommand("success-curve", "Success probability vs. limit curves");
    auto* drift_map = app.add_subcommand("drift-map", "Truncated drift over a sigma_bar grid");
    auto* hitting = app.add_subcommand("hitting-scaling", "Hitting times vs. d and epsilon");
    auto* bounds = app.add_subcommand("bounds", "Drift constants and hitting-time bounds (JSON)");
    auto* har = app.add_subcommand("har-check", "Hit-and-run expected log progress vs. 1/d");
    auto* run = app.add_subcommand("run", "Single traced ES run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        cfg.validate();
        Output out(out_path);
        std::ostream& os = out.stream();
        if (*success_curve) {
            esdrift::write_csv(os, esdrift::success_curve(cfg));
        } else if (*drift_map) {
            esdrift::write_csv(os, esdrift::drift_map_report(cfg));
        } else if (*hitting) {
            esdrift::write_csv(os, esdrift::hitting_scaling(cfg));
        } else if (*bounds) {
            os << esdrift::bounds_report(cfg).dump(2) << '\n';
        } else if (*har) {
            esdrift::write_csv(os, esdrift::har_check(cfg));
        } else if (*run) {
            esdrift::write_csv(os, esdrift::traced_run(cfg));
        }
        out.finish();
    } catch (const esdrift::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const esdrift::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
