#include "beamalign/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace beamalign {

double ExperimentConfig::gamma0_linear() const {
    return std::pow(10.0, gamma0_db / 10.0);
}

ChannelParams ExperimentConfig::channel() const {
    return ChannelParams::from_db(gamma0_db);
}

FrameConfig ExperimentConfig::frame(int sensing) const {
    return FrameConfig{num_slots, sensing, sigma};
}

void ExperimentConfig::validate() const {
    frame(0).validate();
    channel().validate();
    if (episodes < 1) {
        throw std::invalid_argument("config: episodes must be >= 1");
    }
}

double parse_sigma(const std::string& text) {
    if (text == "2pi") {
        return kTwoPi;
    }
    if (text == "pi") {
        return kPi;
    }
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) {
        throw std::invalid_argument("sigma: cannot parse '" + text + "'");
    }
    return v;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path);
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) {
                return std::string{};
            }
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     ": expected key=value");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "n") {
            cfg.num_slots = std::stoi(value);
        } else if (key == "gamma0_db") {
            cfg.gamma0_db = std::stod(value);
        } else if (key == "sigma") {
            cfg.sigma = parse_sigma(value);
        } else if (key == "policy") {
            cfg.policies.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                cfg.policies.push_back(PolicySpec::parse(strip(item)));
            }
        } else if (key == "episodes") {
            cfg.episodes = std::stoull(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(std::stoul(value));
        } else if (key == "sensing_slots") {
            cfg.sensing_slots = std::stoi(value);
        } else if (key == "out") {
            cfg.out_path = value;
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
}

namespace {

constexpr double kNoSim = std::numeric_limits<double>::quiet_NaN();

SweepRow make_row(const std::string& policy, int param, double l_or_lhat,
                  double analytic, std::uint64_t episodes) {
    return SweepRow{policy, param, l_or_lhat, analytic, kNoSim, kNoSim, episodes};
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const ChannelParams cp = cfg.channel();
    const int n = cfg.num_slots;

    std::vector<PolicySpec> policies = cfg.policies;
    if (policies.empty()) {
        policies = {PolicySpec::bisection(), PolicySpec::iterative(4),
                    PolicySpec::iterative(8), PolicySpec::exhaustive(1)};
    }

    std::vector<SweepRow> rows;
    for (const auto& spec : policies) {
        switch (spec.kind) {
            case PolicyKind::Bisection:
                for (int l = 0; l <= n; ++l) {
                    rows.push_back(make_row(
                        spec.name(), l, static_cast<double>(l),
                        optimal_throughput(cfg.sigma, l, cfg.frame(l), cp),
                        cfg.episodes));
                }
                break;
            case PolicyKind::Iterative:
                for (int l = 0; l <= n; ++l) {
                    rows.push_back(make_row(
                        spec.name(), l, static_cast<double>(l),
                        iterative_expected_throughput(cfg.sigma, spec.division,
                                                      l, cfg.frame(l), cp),
                        cfg.episodes));
                }
                break;
            case PolicyKind::Exhaustive:
                for (int k = 1; k <= n; ++k) {
                    rows.push_back(make_row(
                        spec.name(), k, (static_cast<double>(k) + 1.0) / 2.0,
                        exhaustive_expected_throughput(cfg.sigma, k,
                                                       cfg.frame(0), cp),
                        cfg.episodes));
                }
                break;
        }
    }

    if (cfg.with_sim) {
        for (auto& row : rows) {
            PolicySpec spec = PolicySpec::parse(row.policy);
            if (spec.kind == PolicyKind::Exhaustive) {
                spec.sectors = row.param;
            }
            const int sensing =
                spec.kind == PolicyKind::Exhaustive ? 0 : row.param;
            const McSummary mc =
                run_monte_carlo(spec, cfg.frame(sensing), cp, cfg.episodes,
                                cfg.seed, cfg.threads);
            row.sim_mean = mc.mean;
            row.sim_stderr = mc.std_error;
        }
    }
    return rows;
}

std::vector<CompareRow> run_compare(const ExperimentConfig& cfg) {
    cfg.validate();
    const ChannelParams cp = cfg.channel();
    const FrameConfig frame = cfg.frame(0);

    std::vector<PolicySpec> policies = cfg.policies;
    if (policies.empty()) {
        policies = {PolicySpec::bisection(), PolicySpec::iterative(4),
                    PolicySpec::iterative(8), PolicySpec::exhaustive(1)};
    }

    const PolicyPeak reference =
        peak_throughput(PolicySpec::bisection(), cfg.sigma, frame, cp);

    std::vector<CompareRow> rows;
    for (const auto& spec : policies) {
        const PolicyPeak peak = peak_throughput(spec, cfg.sigma, frame, cp);
        CompareRow row;
        row.policy = spec.name();
        row.best_parameter = peak.best_parameter;
        row.peak = peak.throughput;
        row.degradation_pct =
            100.0 * (1.0 - peak.throughput / reference.throughput);
        rows.push_back(row);
    }
    return rows;
}

OptimizeReport run_optimize(const ExperimentConfig& cfg) {
    cfg.validate();
    const ChannelParams cp = cfg.channel();
    const SensingOptimum opt =
        optimize_sensing_duration(cfg.sigma, cfg.frame(0), cp);

    OptimizeReport report;
    report.continuous_l = opt.continuous_l;
    report.best_l = opt.best_l;
    report.best_throughput = opt.throughput;
    report.scan.reserve(static_cast<std::size_t>(cfg.num_slots) + 1);
    for (int l = 0; l <= cfg.num_slots; ++l) {
        report.scan.push_back(optimal_throughput(cfg.sigma, l, cfg.frame(l), cp));
    }
    return report;
}

std::vector<SimulateRow> run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    const ChannelParams cp = cfg.channel();

    std::vector<PolicySpec> policies = cfg.policies;
    if (policies.empty()) {
        policies = {PolicySpec::bisection()};
    }

    std::vector<SimulateRow> rows;
    for (const auto& spec : policies) {
        const int sensing = spec.kind == PolicyKind::Exhaustive ? 0
                            : cfg.sensing_slots >= 0 ? cfg.sensing_slots
                                                     : cfg.num_slots / 2;
        const McSummary mc = run_monte_carlo(spec, cfg.frame(sensing), cp,
                                             cfg.episodes, cfg.seed, cfg.threads);
        SimulateRow row;
        row.policy = spec.name();
        row.param = spec.kind == PolicyKind::Exhaustive ? spec.sectors : sensing;
        row.sensing_slots = sensing;
        row.episodes = cfg.episodes;
        row.seed = cfg.seed;
        row.mean = mc.mean;
        row.std_error = mc.std_error;
        rows.push_back(row);
    }
    return rows;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "policy,param,L_or_Lhat,analytic_throughput,sim_mean,sim_stderr,"
        "episodes\n";
    for (const auto& r : rows) {
        out += r.policy + ',' + std::to_string(r.param) + ',' +
               format_value(r.l_or_lhat) + ',' + format_value(r.analytic) + ',' +
               format_value(r.sim_mean) + ',' + format_value(r.sim_stderr) +
               ',' + std::to_string(r.episodes) + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<CompareRow>& rows) {
    std::string out = "policy,best_parameter,peak_throughput,degradation_pct\n";
    for (const auto& r : rows) {
        out += r.policy + ',' + std::to_string(r.best_parameter) + ',' +
               format_value(r.peak) + ',' + format_value(r.degradation_pct) +
               '\n';
    }
    return out;
}

std::string to_csv(const std::vector<SimulateRow>& rows) {
    std::string out =
        "policy,param,sensing_slots,episodes,seed,mean,std_error\n";
    for (const auto& r : rows) {
        out += r.policy + ',' + std::to_string(r.param) + ',' +
               std::to_string(r.sensing_slots) + ',' +
               std::to_string(r.episodes) + ',' + std::to_string(r.seed) + ',' +
               format_value(r.mean) + ',' + format_value(r.std_error) + '\n';
    }
    return out;
}

std::string to_csv(const OptimizeReport& report) {
    std::string out = "L,analytic_throughput,is_best\n";
    for (std::size_t l = 0; l < report.scan.size(); ++l) {
        out += std::to_string(l) + ',' + format_value(report.scan[l]) + ',' +
               (static_cast<int>(l) == report.best_l ? '1' : '0') + '\n';
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) {
        throw std::runtime_error("sweep csv: empty input");
    }
    std::vector<SweepRow> rows;
    while (std::getline(ss, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 7) {
            throw std::runtime_error("sweep csv: bad row '" + line + "'");
        }
        SweepRow r;
        r.policy = fields[0];
        r.param = std::stoi(fields[1]);
        r.l_or_lhat = std::stod(fields[2]);
        r.analytic = std::stod(fields[3]);
        r.sim_mean = std::stod(fields[4]);
        r.sim_stderr = std::stod(fields[5]);
        r.episodes = std::stoull(fields[6]);
        rows.push_back(r);
    }
    return rows;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

void print_compare_report(std::ostream& os, const std::vector<CompareRow>& rows) {
    os << "peak throughput comparison (bits/slot)\n";
    for (const auto& r : rows) {
        os << "  " << r.policy << ": peak=" << format_value(r.peak)
           << " at parameter " << r.best_parameter
           << ", degradation vs bisection " << format_value(r.degradation_pct)
           << "%\n";
    }
}

void print_optimize_report(std::ostream& os, const OptimizeReport& report) {
    os << "continuous maximizer L_hat = " << format_value(report.continuous_l)
       << "\n";
    os << "optimal sensing duration L* = " << report.best_l << "\n";
    os << "throughput at L* = " << format_value(report.best_throughput)
       << " bits/slot\n";
    os << "discrete scan:\n";
    for (std::size_t l = 0; l < report.scan.size(); ++l) {
        os << "  L=" << l << "  " << format_value(report.scan[l]) << "\n";
    }
}

}  // namespace beamalign
