#include "beamalign/mdp.hpp"

#include <cmath>

namespace beamalign {

void FrameConfig::validate() const {
    if (num_slots < 1) {
        throw std::invalid_argument("FrameConfig: N must be >= 1");
    }
    if (sensing_slots < 0 || sensing_slots > num_slots) {
        throw std::invalid_argument("FrameConfig: L must be in [0, N]");
    }
    if (!(prior_width > 0.0) || prior_width > kTwoPi + kAngleTol) {
        throw std::invalid_argument("FrameConfig: sigma must be in (0, 2*pi]");
    }
}

double LinkBudget::gamma0() const {
    return p_avg * std::pow(d_max, -beta) / (kTwoPi * n0);
}

ChannelParams ChannelParams::from_db(double gamma0_db) {
    return ChannelParams{std::pow(10.0, gamma0_db / 10.0), std::nullopt};
}

ChannelParams ChannelParams::from_link_budget(const LinkBudget& lb) {
    return ChannelParams{lb.gamma0(), lb};
}

void ChannelParams::validate() const {
    if (!(gamma0 > 0.0)) {
        throw std::invalid_argument("ChannelParams: gamma0 must be positive");
    }
    if (budget) {
        const double derived = budget->gamma0();
        if (std::fabs(derived - gamma0) > 1e-12 * std::fabs(gamma0)) {
            throw std::invalid_argument(
                "ChannelParams: link budget inconsistent with gamma0");
        }
    }
}

double gamma_l(const ChannelParams& cp, const FrameConfig& cfg) {
    cfg.validate();
    cp.validate();
    if (cfg.sensing_slots >= cfg.num_slots) {
        throw std::invalid_argument("gamma_l: no data slots (L == N)");
    }
    return cp.gamma0 * static_cast<double>(cfg.num_slots) /
           static_cast<double>(cfg.num_slots - cfg.sensing_slots);
}

double snr(double beam_width, double gamma_l_value) {
    if (!(beam_width > 0.0)) {
        throw std::invalid_argument("snr: beam width must be positive");
    }
    return gamma_l_value / beam_width;
}

BeliefState initial_belief(const FrameConfig& cfg) {
    cfg.validate();
    return BeliefState{ArcInterval(-cfg.prior_width / 2.0, cfg.prior_width), 0};
}

double detection_probability(const BeliefState& b, const ArcInterval& beam) {
    if (b.support.empty()) {
        throw std::invalid_argument("detection_probability: empty support");
    }
    const double hit = total_measure(intersect(beam, b.support));
    double p = hit / measure(b.support);
    return std::fmin(std::fmax(p, 0.0), 1.0);
}

BeliefState update_belief(const BeliefState& b, const ArcInterval& beam,
                          Observation obs) {
    auto pieces = obs.ack ? intersect(beam, b.support)
                          : subtract(b.support, beam);
    pieces = merge_adjacent(std::move(pieces));
    if (pieces.empty() || total_measure(pieces) < kEmptyWidth) {
        throw ProtocolViolation(
            "update_belief: observation inconsistent with belief support");
    }
    if (pieces.size() > 1) {
        throw NonContiguousSupport(
            "update_belief: posterior support is not contiguous");
    }
    return BeliefState{pieces.front(), b.slot + 1};
}

double expected_reward(const BeliefState& b, const ArcInterval& beam,
                       const FrameConfig& cfg, const ChannelParams& cp) {
    cfg.validate();
    if (cfg.sensing_slots == cfg.num_slots) {
        return 0.0;  // no data slots
    }
    if (beam.empty()) {
        throw std::invalid_argument("expected_reward: empty beam");
    }
    const double frac = static_cast<double>(cfg.num_slots - cfg.sensing_slots) /
                        static_cast<double>(cfg.num_slots);
    return frac * detection_probability(b, beam) *
           std::log2(1.0 + gamma_l(cp, cfg) / measure(beam));
}

GridDensity::GridDensity(std::size_t bins) : mass_(bins, 0.0) {
    if (bins == 0) {
        throw std::invalid_argument("GridDensity: need at least one bin");
    }
}

double GridDensity::bin_center(std::size_t i) const {
    const double step = kTwoPi / static_cast<double>(mass_.size());
    return -kPi + (static_cast<double>(i) + 0.5) * step;
}

double GridDensity::total_mass() const {
    double sum = 0.0;
    for (double m : mass_) {
        sum += m;
    }
    return sum;
}

void GridDensity::normalize() {
    const double z = total_mass();
    if (z < kEmptyWidth) {
        throw ProtocolViolation("GridDensity: zero total mass");
    }
    for (double& m : mass_) {
        m /= z;
    }
}

GridDensity GridDensity::uniform_on(std::size_t bins,
                                    const ArcInterval& support) {
    GridDensity g(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        g.mass_[i] = contains(support, g.bin_center(i)) ? 1.0 : 0.0;
    }
    g.normalize();
    return g;
}

GridDensity GridDensity::from_pdf(std::size_t bins,
                                  const std::function<double(double)>& pdf) {
    GridDensity g(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double v = pdf(g.bin_center(i));
        g.mass_[i] = v > 0.0 ? v : 0.0;
    }
    g.normalize();
    return g;
}

GridDensity grid_bayes_update(const GridDensity& prior, const ArcInterval& beam,
                              Observation obs) {
    GridDensity post(prior.bins());
    for (std::size_t i = 0; i < prior.bins(); ++i) {
        const bool inside = contains(beam, post.bin_center(i));
        post.mass(i) = (inside == obs.ack) ? prior.mass(i) : 0.0;
    }
    post.normalize();
    return post;
}

GridDensity reconstruct_density(const GridDensity& prior,
                                const ArcInterval& support) {
    GridDensity post(prior.bins());
    for (std::size_t i = 0; i < prior.bins(); ++i) {
        post.mass(i) = contains(support, post.bin_center(i)) ? prior.mass(i) : 0.0;
    }
    post.normalize();
    return post;
}

}  // namespace beamalign
