#include "beamalign/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace beamalign {

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || sigma > kTwoPi + kAngleTol) {
        throw std::invalid_argument("sigma must be in (0, 2*pi]");
    }
}

double data_fraction(int n, int l) {
    return static_cast<double>(n - l) / static_cast<double>(n);
}

}  // namespace

double value_upper_bound(double support_width, int slot, const FrameConfig& cfg,
                         const ChannelParams& cp) {
    cfg.validate();
    if (!(support_width > 0.0)) {
        throw std::invalid_argument("value_upper_bound: width must be positive");
    }
    const int l = cfg.sensing_slots;
    if (slot < 0 || slot > l) {
        throw std::invalid_argument("value_upper_bound: slot outside [0, L]");
    }
    if (l == cfg.num_slots) {
        return 0.0;
    }
    const double gl = gamma_l(cp, cfg);
    return data_fraction(cfg.num_slots, l) *
           std::log2(1.0 + std::exp2(static_cast<double>(l - slot)) * gl /
                               support_width);
}

double optimal_throughput(double sigma, int sensing_slots,
                          const FrameConfig& cfg, const ChannelParams& cp) {
    check_sigma(sigma);
    cp.validate();
    const int n = cfg.num_slots;
    const int l = sensing_slots;
    if (l < 0 || l > n) {
        throw std::invalid_argument("optimal_throughput: L outside [0, N]");
    }
    if (l == n) {
        return 0.0;
    }
    const double gl = cp.gamma0 * static_cast<double>(n) /
                      static_cast<double>(n - l);
    return data_fraction(n, l) *
           std::log2(1.0 + gl * std::exp2(static_cast<double>(l)) / sigma);
}

double optimal_throughput_continuous(double sigma, double sensing_slots,
                                     const FrameConfig& cfg,
                                     const ChannelParams& cp) {
    check_sigma(sigma);
    const double n = static_cast<double>(cfg.num_slots);
    const double l = sensing_slots;
    if (l >= n) {
        return 0.0;
    }
    return (n - l) / n *
           std::log2(1.0 + n * std::exp2(l) * cp.gamma0 / (sigma * (n - l)));
}

double exhaustive_expected_throughput(double sigma, int sectors,
                                      const FrameConfig& cfg,
                                      const ChannelParams& cp) {
    check_sigma(sigma);
    cp.validate();
    const int n = cfg.num_slots;
    const int k = sectors;
    if (k < 1 || k > n) {
        throw std::invalid_argument("exhaustive throughput: K outside [1, N]");
    }
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        const int data = n - j - 1;
        if (data == 0) {
            continue;  // detection in the last slot leaves no data slots
        }
        sum += static_cast<double>(data) / n *
               std::log2(1.0 + static_cast<double>(n) * k * cp.gamma0 /
                                   (static_cast<double>(data) * sigma));
    }
    return sum / static_cast<double>(k);
}

double exhaustive_upper_bound(double sigma, int sectors, const FrameConfig& cfg,
                              const ChannelParams& cp) {
    check_sigma(sigma);
    cp.validate();
    const int n = cfg.num_slots;
    if (sectors < 1 || sectors > n) {
        throw std::invalid_argument("exhaustive bound: K outside [1, N]");
    }
    const int lf = (sectors + 1) / 2;  // floor of the mean duration (K+1)/2
    if (lf >= n) {
        return 0.0;
    }
    return data_fraction(n, lf) *
           std::log2(1.0 + static_cast<double>(n) * 2.0 * lf * cp.gamma0 /
                               (static_cast<double>(n - lf) * sigma));
}

namespace {

// Expected log2(1 + gamma_l / final_width) for the iterative policy,
// enumerated over the per-level MU subsector index (uniform on M values).
// Level widths are reproduced with the same arithmetic the simulated
// episodes use (repeated division/subtraction).
class IterativeEnumerator {
public:
    IterativeEnumerator(int division, double gamma_l_value)
        : m_(division), gl_(gamma_l_value) {}

    double expect(double level_width, int budget, int depth) {
        if (level_width <= kEmptyWidth) {
            return term(kEmptyWidth);
        }
        if (budget == 0) {
            return term(level_width);
        }
        const std::size_t key = static_cast<std::size_t>(depth) * 4096u +
                                static_cast<std::size_t>(budget);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        const double sub = level_width / static_cast<double>(m_);
        double total = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int needed = std::min(i + 1, m_ - 1);
            if (budget >= needed) {
                total += expect(sub, budget - needed, depth + 1);
            } else {
                // budget exhausted after `budget` timeouts in this level:
                // the support is the unscanned remainder
                double rem = level_width;
                for (int t = 0; t < budget; ++t) {
                    rem -= sub;
                }
                total += term(rem);
            }
        }
        const double avg = total / static_cast<double>(m_);
        memo_.emplace(key, avg);
        return avg;
    }

private:
    double term(double width) const {
        return std::log2(1.0 + gl_ / std::fmax(width, kEmptyWidth));
    }

    int m_;
    double gl_;
    std::unordered_map<std::size_t, double> memo_;
};

}  // namespace

double iterative_expected_throughput(double sigma, int division,
                                     int sensing_slots, const FrameConfig& cfg,
                                     const ChannelParams& cp) {
    check_sigma(sigma);
    cp.validate();
    const int n = cfg.num_slots;
    const int l = sensing_slots;
    if (division < 2) {
        throw std::invalid_argument("iterative throughput: M must be >= 2");
    }
    if (l < 0 || l > n) {
        throw std::invalid_argument("iterative throughput: L outside [0, N]");
    }
    if (l == n) {
        return 0.0;
    }
    const double gl = cp.gamma0 * static_cast<double>(n) /
                      static_cast<double>(n - l);
    IterativeEnumerator en(division, gl);
    return data_fraction(n, l) * en.expect(sigma, l, 0);
}

SensingOptimum optimize_sensing_duration(double sigma, const FrameConfig& cfg,
                                         const ChannelParams& cp) {
    check_sigma(sigma);
    cp.validate();
    cfg.validate();
    const int n = cfg.num_slots;

    const auto objective = [&](double l) {
        const double v = optimal_throughput_continuous(sigma, l, cfg, cp);
        return v > 0.0 ? std::log(v) : -1e300;
    };

    // Golden-section maximization on [0, N]; unimodal by log-concavity.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = static_cast<double>(n);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-8) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double l_hat = (a + b) / 2.0;

    SensingOptimum out;
    out.continuous_l = l_hat;
    const int lo = std::max(0, static_cast<int>(std::floor(l_hat)));
    const int hi = std::min(n, static_cast<int>(std::ceil(l_hat)));
    const double v_lo = optimal_throughput(sigma, lo, cfg, cp);
    const double v_hi = optimal_throughput(sigma, hi, cfg, cp);
    if (v_hi > v_lo) {
        out.best_l = hi;
        out.throughput = v_hi;
    } else {
        out.best_l = lo;
        out.throughput = v_lo;
    }
    return out;
}

PolicyPeak peak_throughput(const PolicySpec& spec, double sigma,
                           const FrameConfig& cfg, const ChannelParams& cp) {
    spec.validate(cfg);
    const int n = cfg.num_slots;
    PolicyPeak peak{spec, 0, 0.0};
    switch (spec.kind) {
        case PolicyKind::Bisection: {
            const auto opt = optimize_sensing_duration(sigma, cfg, cp);
            peak.best_parameter = opt.best_l;
            peak.throughput = opt.throughput;
            break;
        }
        case PolicyKind::Iterative: {
            peak.best_parameter = 0;
            peak.throughput =
                iterative_expected_throughput(sigma, spec.division, 0, cfg, cp);
            for (int l = 1; l <= n; ++l) {
                const double v =
                    iterative_expected_throughput(sigma, spec.division, l, cfg, cp);
                if (v > peak.throughput) {
                    peak.throughput = v;
                    peak.best_parameter = l;
                }
            }
            break;
        }
        case PolicyKind::Exhaustive: {
            peak.best_parameter = 1;
            peak.throughput = exhaustive_expected_throughput(sigma, 1, cfg, cp);
            for (int k = 2; k <= n; ++k) {
                const double v = exhaustive_expected_throughput(sigma, k, cfg, cp);
                if (v > peak.throughput) {
                    peak.throughput = v;
                    peak.best_parameter = k;
                }
            }
            break;
        }
    }
    return peak;
}

}  // namespace beamalign
