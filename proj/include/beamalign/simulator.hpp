#pragma once

#include <cstdint>
#include <vector>

#include "beamalign/policies.hpp"

namespace beamalign {

struct EpisodeResult {
    double theta = 0.0;
    int sensing_slots_used = 0;
    ArcInterval final_beam;
    bool covered = false;
    double realized_throughput = 0.0;  // bits/slot
};

struct McSummary {
    std::uint64_t episodes = 0;
    double mean = 0.0;
    double std_error = 0.0;
    // indexed by sensing_slots_used
    std::vector<std::uint64_t> slot_histogram;
};

/// One full frame against an MU at angle theta: sensing beacons, belief
/// updates, final data beam, realized throughput.
EpisodeResult run_episode(const PolicySpec& spec, const FrameConfig& cfg,
                          const ChannelParams& cp, double theta);

/// Seeded Monte Carlo over i.i.d. MU angles on [-sigma/2, sigma/2).
/// Identical (spec, cfg, cp, episodes, seed) gives bit-identical summaries
/// for any thread count: per-episode angles come from counter-based
/// substreams and the reduction order is fixed.
McSummary run_monte_carlo(const PolicySpec& spec, const FrameConfig& cfg,
                          const ChannelParams& cp, std::uint64_t episodes,
                          std::uint64_t seed, unsigned threads = 1);

/// Uniform [0,1) draw for episode `index` under `seed` (splitmix64 hash).
double episode_uniform(std::uint64_t seed, std::uint64_t index);

}  // namespace beamalign
