#pragma once

#include <string>
#include <string_view>

#include "beamalign/mdp.hpp"

namespace beamalign {

enum class PolicyKind { Bisection, Exhaustive, Iterative };

struct PolicySpec {
    PolicyKind kind = PolicyKind::Bisection;
    int sectors = 1;   // K, exhaustive only
    int division = 2;  // M, iterative only

    static PolicySpec bisection();
    static PolicySpec exhaustive(int k);
    static PolicySpec iterative(int m);

    /// "bisection" | "exhaustive:K" | "iterative:M"
    static PolicySpec parse(std::string_view text);

    std::string name() const;
    void validate(const FrameConfig& cfg) const;
};

/// Per-episode progress of a policy. Bisection carries no state beyond the
/// belief; exhaustive tracks the next sector; iterative tracks the current
/// refinement level.
struct PolicyState {
    int sector_index = 0;       // exhaustive: next sector j
    bool detected = false;      // exhaustive
    double level_width = 0.0;   // iterative: width of the sector being refined
    int probes_in_level = 0;    // iterative
};

PolicyState initial_state(const PolicySpec& spec, const FrameConfig& cfg);

/// Lower half of the current support (Theorem-1-optimal; the lower-half tie
/// break is fixed for reproducibility).
ArcInterval next_beam_bisection(const BeliefState& b, const FrameConfig& cfg);

/// Sector j of K equal sectors covering the prior, scanned left to right.
ArcInterval next_beam_exhaustive(const PolicySpec& spec, const PolicyState& st,
                                 const FrameConfig& cfg);

/// First of M equal subsectors of the current level, i.e. a prefix of the
/// current support.
ArcInterval next_beam_iterative(const PolicySpec& spec, const PolicyState& st,
                                const BeliefState& b);

ArcInterval next_beam(const PolicySpec& spec, const PolicyState& st,
                      const BeliefState& b, const FrameConfig& cfg);

/// Advance policy bookkeeping after the belief has been updated with obs.
void advance_state(const PolicySpec& spec, PolicyState& st, Observation obs,
                   const BeliefState& updated);

/// True while the policy wants to send another sensing beacon.
bool wants_probe(const PolicySpec& spec, const PolicyState& st,
                 const BeliefState& b, const FrameConfig& cfg);

/// Data beam after sensing: the support itself.
ArcInterval final_beam(const BeliefState& b);

}  // namespace beamalign
