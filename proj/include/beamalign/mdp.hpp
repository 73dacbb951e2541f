#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "beamalign/geometry.hpp"

namespace beamalign {

/// The sensing beacon produced an observation that is impossible under the
/// zero-misdetection model (the posterior support would be empty).
struct ProtocolViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A belief update produced a support that is not a single contiguous arc.
/// The in-scope policies never do this.
struct NonContiguousSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FrameConfig {
    int num_slots = 50;          // N
    int sensing_slots = 0;       // L
    double prior_width = kTwoPi; // sigma, in (0, 2*pi]

    void validate() const;
};

struct LinkBudget {
    double p_avg;   // average power constraint, watts
    double d_max;   // cell radius, meters
    double beta;    // path-loss exponent
    double n0;      // one-sided noise PSD

    double gamma0() const;
};

struct ChannelParams {
    double gamma0 = 1.0;  // base SNR parameter, linear scale, L-invariant
    std::optional<LinkBudget> budget;

    static ChannelParams from_db(double gamma0_db);
    static ChannelParams from_link_budget(const LinkBudget& lb);

    void validate() const;
};

struct Observation {
    bool ack = false;  // c_k
};

/// Sufficient statistic of the angular belief: the support interval plus
/// the slot index. The (uniform) prior is implicit.
struct BeliefState {
    ArcInterval support;
    int slot = 0;
};

/// SNR parameter after reallocating power to the N-L data slots.
double gamma_l(const ChannelParams& cp, const FrameConfig& cfg);

double snr(double beam_width, double gamma_l_value);

BeliefState initial_belief(const FrameConfig& cfg);

/// P(ack | support, beam) = |beam ∩ support| / |support|.
double detection_probability(const BeliefState& b, const ArcInterval& beam);

/// Posterior support: beam ∩ U on ack, U \ beam on timeout; slot + 1.
BeliefState update_belief(const BeliefState& b, const ArcInterval& beam,
                          Observation obs);

/// Expected one-frame throughput (bits/slot) of transmitting data on `beam`
/// after the sensing phase. Zero when L == N.
double expected_reward(const BeliefState& b, const ArcInterval& beam,
                       const FrameConfig& cfg, const ChannelParams& cp);

/// Binned density over [-pi, pi); test oracle for the belief recursion.
/// Supports arbitrary (non-uniform) priors.
class GridDensity {
public:
    explicit GridDensity(std::size_t bins);

    static GridDensity uniform_on(std::size_t bins, const ArcInterval& support);
    static GridDensity from_pdf(std::size_t bins,
                                const std::function<double(double)>& pdf);

    std::size_t bins() const { return mass_.size(); }
    double bin_center(std::size_t i) const;
    double mass(std::size_t i) const { return mass_[i]; }
    double& mass(std::size_t i) { return mass_[i]; }
    double total_mass() const;
    void normalize();

private:
    std::vector<double> mass_;
};

/// One Bayes step on the grid: keep bins whose center membership in `beam`
/// matches the observation, then renormalize.
GridDensity grid_bayes_update(const GridDensity& prior, const ArcInterval& beam,
                              Observation obs);

/// Restrict the prior to `support` (bin-center membership) and renormalize.
GridDensity reconstruct_density(const GridDensity& prior,
                                const ArcInterval& support);

}  // namespace beamalign
