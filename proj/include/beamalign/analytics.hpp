#pragma once

#include "beamalign/policies.hpp"

namespace beamalign {

/// Dynamic-programming ceiling on the value at slot k given a contiguous
/// support of width `support_width`: ((N-L)/N) log2(1 + 2^(L-k) gamma_L / u).
double value_upper_bound(double support_width, int slot, const FrameConfig& cfg,
                         const ChannelParams& cp);

/// Throughput of the optimal (bisection) policy with sensing duration L.
/// Zero when L == N.
double optimal_throughput(double sigma, int sensing_slots,
                          const FrameConfig& cfg, const ChannelParams& cp);

/// Continuous-L relaxation of optimal_throughput; used by the optimizer.
double optimal_throughput_continuous(double sigma, double sensing_slots,
                                     const FrameConfig& cfg,
                                     const ChannelParams& cp);

/// Exact expectation over the uniform detection slot J in {0,..,K-1}.
double exhaustive_expected_throughput(double sigma, int sectors,
                                      const FrameConfig& cfg,
                                      const ChannelParams& cp);

/// Jensen upper bound on the exhaustive throughput at the mean sensing
/// duration (K+1)/2.
double exhaustive_upper_bound(double sigma, int sectors, const FrameConfig& cfg,
                              const ChannelParams& cp);

/// Exact expectation for the iterative policy with division factor M and
/// sensing budget L, by enumeration of the level state machine.
double iterative_expected_throughput(double sigma, int division,
                                     int sensing_slots, const FrameConfig& cfg,
                                     const ChannelParams& cp);

struct SensingOptimum {
    double continuous_l;  // unconstrained maximizer over [0, N]
    int best_l;           // discrete argmax among its floor/ceil
    double throughput;    // bits/slot at best_l
};

/// Golden-section search over the (log-concave) continuous relaxation,
/// then the discrete floor/ceil refinement.
SensingOptimum optimize_sensing_duration(double sigma, const FrameConfig& cfg,
                                         const ChannelParams& cp);

struct PolicyPeak {
    PolicySpec spec;
    int best_parameter;  // L for bisection/iterative, K for exhaustive
    double throughput;
};

/// Peak expected throughput of a policy, optimized over its sensing
/// duration parameter.
PolicyPeak peak_throughput(const PolicySpec& spec, double sigma,
                           const FrameConfig& cfg, const ChannelParams& cp);

}  // namespace beamalign
