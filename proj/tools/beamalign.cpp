#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamalign/experiment.hpp"

namespace {

using beamalign::ExperimentConfig;

struct CliOptions {
    ExperimentConfig cfg;
    std::string config_path;
    std::string sigma_text;
    std::vector<std::string> policy_names;
    bool paper = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path,
                    "Flat key=value config file (flags override it)");
    cmd->add_option("--n", opt.cfg.num_slots, "Slots per frame (N)");
    cmd->add_option("--gamma0-db", opt.cfg.gamma0_db,
                    "Base SNR parameter in dB");
    cmd->add_option("--sigma", opt.sigma_text,
                    "Prior angular width in radians ('2pi' accepted)");
    cmd->add_option("--policy", opt.policy_names,
                    "bisection | exhaustive:K | iterative:M (repeatable)");
    cmd->add_option("--episodes", opt.cfg.episodes, "Monte Carlo episodes");
    cmd->add_option("--seed", opt.cfg.seed, "Monte Carlo seed");
    cmd->add_option("--threads", opt.cfg.threads, "Worker threads");
    cmd->add_option("--out", opt.cfg.out_path, "Output CSV path");
    cmd->add_flag("--paper", opt.paper,
                  "Use the reference scenario: N=50, gamma0=-5dB, sigma=2pi");
}

ExperimentConfig resolve(const CLI::App* cmd, CliOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        beamalign::load_config_file(opt.config_path, cfg);
    }
    if (opt.paper) {
        cfg.num_slots = 50;
        cfg.gamma0_db = -5.0;
        cfg.sigma = beamalign::kTwoPi;
    }
    auto seen = [&](const std::string& flag) {
        return cmd->count(flag) > 0;
    };
    if (seen("--n")) cfg.num_slots = opt.cfg.num_slots;
    if (seen("--gamma0-db")) cfg.gamma0_db = opt.cfg.gamma0_db;
    if (seen("--sigma")) cfg.sigma = beamalign::parse_sigma(opt.sigma_text);
    if (seen("--episodes")) cfg.episodes = opt.cfg.episodes;
    if (seen("--seed")) cfg.seed = opt.cfg.seed;
    if (seen("--threads")) cfg.threads = opt.cfg.threads;
    if (seen("--out")) cfg.out_path = opt.cfg.out_path;
    if (!opt.policy_names.empty()) {
        cfg.policies.clear();
        for (const auto& name : opt.policy_names) {
            cfg.policies.push_back(beamalign::PolicySpec::parse(name));
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beam alignment throughput experiments"};
    app.require_subcommand(1);

    CliOptions sweep_opt;
    auto* sweep = app.add_subcommand(
        "sweep", "Throughput versus sensing duration, analytic and simulated");
    add_common_flags(sweep, sweep_opt);
    bool with_sim = false;
    sweep->add_flag("--with-sim", with_sim,
                    "Add Monte Carlo columns to the sweep");

    CliOptions optimize_opt;
    auto* optimize = app.add_subcommand(
        "optimize", "Optimal sensing duration for the bisection policy");
    add_common_flags(optimize, optimize_opt);

    CliOptions compare_opt;
    auto* compare = app.add_subcommand(
        "compare", "Peak throughput per policy relative to bisection");
    add_common_flags(compare, compare_opt);

    CliOptions simulate_opt;
    int sensing_slots = -1;
    auto* simulate = app.add_subcommand(
        "simulate", "Single-policy Monte Carlo summary");
    add_common_flags(simulate, simulate_opt);
    simulate->add_option("--sensing-slots", sensing_slots,
                         "Sensing duration L (bisection/iterative)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            ExperimentConfig cfg = resolve(sweep, sweep_opt);
            cfg.with_sim = with_sim;
            const auto rows = beamalign::run_sweep(cfg);
            const std::string csv = beamalign::to_csv(rows);
            if (cfg.out_path.empty()) {
                std::cout << csv;
            } else {
                beamalign::write_file_atomic(cfg.out_path, csv);
                std::cout << "wrote " << rows.size() << " rows to "
                          << cfg.out_path << "\n";
            }
        } else if (optimize->parsed()) {
            ExperimentConfig cfg = resolve(optimize, optimize_opt);
            const auto report = beamalign::run_optimize(cfg);
            beamalign::print_optimize_report(std::cout, report);
            if (!cfg.out_path.empty()) {
                beamalign::write_file_atomic(cfg.out_path,
                                             beamalign::to_csv(report));
                std::cout << "wrote " << report.scan.size() << " rows to "
                          << cfg.out_path << "\n";
            }
        } else if (compare->parsed()) {
            ExperimentConfig cfg = resolve(compare, compare_opt);
            const auto rows = beamalign::run_compare(cfg);
            beamalign::print_compare_report(std::cout, rows);
            if (!cfg.out_path.empty()) {
                beamalign::write_file_atomic(cfg.out_path,
                                             beamalign::to_csv(rows));
            }
        } else if (simulate->parsed()) {
            ExperimentConfig cfg = resolve(simulate, simulate_opt);
            if (simulate->count("--sensing-slots") > 0) {
                cfg.sensing_slots = sensing_slots;
            }
            const auto rows = beamalign::run_simulate(cfg);
            const std::string csv = beamalign::to_csv(rows);
            if (cfg.out_path.empty()) {
                std::cout << csv;
            } else {
                beamalign::write_file_atomic(cfg.out_path, csv);
                std::cout << "wrote " << rows.size() << " rows to "
                          << cfg.out_path << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
