#include "beamalign/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace beamalign {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Fixed-order pairwise sum over [lo, hi).
double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            s += v[i];
        }
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

double episode_uniform(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ (index + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

EpisodeResult run_episode(const PolicySpec& spec, const FrameConfig& cfg,
                          const ChannelParams& cp, double theta) {
    spec.validate(cfg);
    cp.validate();

    BeliefState belief = initial_belief(cfg);
    if (!contains(belief.support, theta)) {
        throw std::invalid_argument("run_episode: theta outside the prior");
    }
    PolicyState st = initial_state(spec, cfg);

    while (wants_probe(spec, st, belief, cfg)) {
        const ArcInterval beam = next_beam(spec, st, belief, cfg);
        const Observation obs{contains(beam, theta)};
        belief = update_belief(belief, beam, obs);
        advance_state(spec, st, obs, belief);
    }

    EpisodeResult result;
    result.theta = theta;
    result.sensing_slots_used = belief.slot;
    result.final_beam = final_beam(belief);
    result.covered = contains(result.final_beam, theta);

    const int n = cfg.num_slots;
    const int l = result.sensing_slots_used;
    if (result.covered && l < n) {
        // power reallocated over the realized data slots (random for
        // exhaustive search, fixed L otherwise)
        const double gl = cp.gamma0 * static_cast<double>(n) /
                          static_cast<double>(n - l);
        result.realized_throughput =
            static_cast<double>(n - l) / static_cast<double>(n) *
            std::log2(1.0 + gl / measure(result.final_beam));
    }
    return result;
}

McSummary run_monte_carlo(const PolicySpec& spec, const FrameConfig& cfg,
                          const ChannelParams& cp, std::uint64_t episodes,
                          std::uint64_t seed, unsigned threads) {
    if (episodes < 1) {
        throw std::invalid_argument("run_monte_carlo: need at least 1 episode");
    }
    spec.validate(cfg);
    cp.validate();

    const std::size_t n = static_cast<std::size_t>(episodes);
    std::vector<double> throughput(n);
    std::vector<int> slots(n);

    const double sigma = cfg.prior_width;
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double u = episode_uniform(seed, i);
            const double theta = -sigma / 2.0 + sigma * u;
            const EpisodeResult r = run_episode(spec, cfg, cp, theta);
            throughput[i] = r.realized_throughput;
            slots[i] = r.sensing_slots_used;
        }
    };

    const unsigned workers = std::max(1u, threads);
    if (workers == 1 || n < 2 * workers) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) {
                pool.emplace_back(worker, lo, hi);
            }
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    McSummary summary;
    summary.episodes = episodes;
    summary.mean = pairwise_sum(throughput, 0, n) / static_cast<double>(n);

    const auto [mn, mx] = std::minmax_element(throughput.begin(), throughput.end());
    if (*mn == *mx) {
        // all realizations identical: degenerate sample, zero spread
        summary.mean = *mn;
        summary.std_error = 0.0;
    } else if (n > 1) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = throughput[i] - summary.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq, 0, n) / static_cast<double>(n - 1);
        summary.std_error = std::sqrt(var / static_cast<double>(n));
    }

    int max_slot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        max_slot = std::max(max_slot, slots[i]);
    }
    summary.slot_histogram.assign(static_cast<std::size_t>(max_slot) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++summary.slot_histogram[static_cast<std::size_t>(slots[i])];
    }
    return summary;
}

}  // namespace beamalign
