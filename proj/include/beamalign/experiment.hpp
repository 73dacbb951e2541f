#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "beamalign/analytics.hpp"
#include "beamalign/simulator.hpp"

namespace beamalign {

struct ExperimentConfig {
    int num_slots = 50;
    double gamma0_db = -5.0;
    double sigma = kTwoPi;
    std::vector<PolicySpec> policies;
    std::uint64_t episodes = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool with_sim = false;
    int sensing_slots = -1;  // simulate: L for bisection/iterative
    std::string out_path;

    double gamma0_linear() const;
    ChannelParams channel() const;
    FrameConfig frame(int sensing) const;
    void validate() const;
};

/// Parse "2pi", "pi", or a plain radian value.
double parse_sigma(const std::string& text);

/// Flat key=value file; '#' starts a comment. Unknown keys are errors.
void load_config_file(const std::string& path, ExperimentConfig& cfg);

struct SweepRow {
    std::string policy;
    int param = 0;            // L (bisection/iterative) or K (exhaustive)
    double l_or_lhat = 0.0;   // sensing duration; (K+1)/2 for exhaustive
    double analytic = 0.0;
    double sim_mean = 0.0;    // NaN when simulation disabled
    double sim_stderr = 0.0;  // NaN when simulation disabled
    std::uint64_t episodes = 0;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

struct CompareRow {
    std::string policy;
    int best_parameter = 0;
    double peak = 0.0;
    double degradation_pct = 0.0;  // relative to the bisection peak
};

std::vector<CompareRow> run_compare(const ExperimentConfig& cfg);

struct OptimizeReport {
    double continuous_l = 0.0;
    int best_l = 0;
    double best_throughput = 0.0;
    std::vector<double> scan;  // V0*(sigma, L) for L = 0..N, audit trail
};

OptimizeReport run_optimize(const ExperimentConfig& cfg);

struct SimulateRow {
    std::string policy;
    int param = 0;
    int sensing_slots = 0;
    std::uint64_t episodes = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

std::vector<SimulateRow> run_simulate(const ExperimentConfig& cfg);

/// Numbers are printed with 12 significant digits.
std::string format_value(double v);

std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<CompareRow>& rows);
std::string to_csv(const std::vector<SimulateRow>& rows);
std::string to_csv(const OptimizeReport& report);

std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Write-then-rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

void print_compare_report(std::ostream& os, const std::vector<CompareRow>& rows);
void print_optimize_report(std::ostream& os, const OptimizeReport& report);

}  // namespace beamalign
