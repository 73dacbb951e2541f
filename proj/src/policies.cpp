#include "beamalign/policies.hpp"

#include <charconv>
#include <cmath>

namespace beamalign {

PolicySpec PolicySpec::bisection() {
    return PolicySpec{PolicyKind::Bisection, 1, 2};
}

PolicySpec PolicySpec::exhaustive(int k) {
    return PolicySpec{PolicyKind::Exhaustive, k, 2};
}

PolicySpec PolicySpec::iterative(int m) {
    return PolicySpec{PolicyKind::Iterative, 1, m};
}

PolicySpec PolicySpec::parse(std::string_view text) {
    auto parse_param = [](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("PolicySpec: bad integer parameter");
        }
        return v;
    };
    if (text == "bisection") {
        return bisection();
    }
    if (text.starts_with("exhaustive:")) {
        return exhaustive(parse_param(text.substr(11)));
    }
    if (text.starts_with("iterative:")) {
        return iterative(parse_param(text.substr(10)));
    }
    throw std::invalid_argument("PolicySpec: unknown policy '" +
                                std::string(text) + "'");
}

std::string PolicySpec::name() const {
    switch (kind) {
        case PolicyKind::Bisection:
            return "bisection";
        case PolicyKind::Exhaustive:
            return "exhaustive:" + std::to_string(sectors);
        case PolicyKind::Iterative:
            return "iterative:" + std::to_string(division);
    }
    return "?";
}

void PolicySpec::validate(const FrameConfig& cfg) const {
    cfg.validate();
    if (kind == PolicyKind::Exhaustive &&
        (sectors < 1 || sectors > cfg.num_slots)) {
        throw std::invalid_argument("PolicySpec: K must be in [1, N]");
    }
    if (kind == PolicyKind::Iterative && division < 2) {
        throw std::invalid_argument("PolicySpec: M must be >= 2");
    }
}

PolicyState initial_state(const PolicySpec& spec, const FrameConfig& cfg) {
    spec.validate(cfg);
    PolicyState st;
    st.level_width = cfg.prior_width;
    return st;
}

ArcInterval next_beam_bisection(const BeliefState& b, const FrameConfig& cfg) {
    if (b.slot >= cfg.sensing_slots) {
        throw std::invalid_argument("next_beam_bisection: sensing phase over");
    }
    return halves(b.support).lower;
}

ArcInterval next_beam_exhaustive(const PolicySpec& spec, const PolicyState& st,
                                 const FrameConfig& cfg) {
    if (st.sector_index >= spec.sectors) {
        throw std::invalid_argument("next_beam_exhaustive: all sectors scanned");
    }
    const double w = cfg.prior_width / static_cast<double>(spec.sectors);
    return ArcInterval(-cfg.prior_width / 2.0 + st.sector_index * w, w);
}

ArcInterval next_beam_iterative(const PolicySpec& spec, const PolicyState& st,
                                const BeliefState& b) {
    const double sub = st.level_width / static_cast<double>(spec.division);
    return ArcInterval(b.support.start, sub);
}

ArcInterval next_beam(const PolicySpec& spec, const PolicyState& st,
                      const BeliefState& b, const FrameConfig& cfg) {
    switch (spec.kind) {
        case PolicyKind::Bisection:
            return next_beam_bisection(b, cfg);
        case PolicyKind::Exhaustive:
            return next_beam_exhaustive(spec, st, cfg);
        case PolicyKind::Iterative:
            return next_beam_iterative(spec, st, b);
    }
    throw std::logic_error("next_beam: bad policy kind");
}

void advance_state(const PolicySpec& spec, PolicyState& st, Observation obs,
                   const BeliefState& updated) {
    switch (spec.kind) {
        case PolicyKind::Bisection:
            break;
        case PolicyKind::Exhaustive:
            if (obs.ack) {
                st.detected = true;
            } else {
                ++st.sector_index;
            }
            break;
        case PolicyKind::Iterative:
            if (obs.ack) {
                // descend into the detected subsector
                st.level_width = measure(updated.support);
                st.probes_in_level = 0;
            } else {
                ++st.probes_in_level;
                if (st.probes_in_level == spec.division - 1) {
                    // remaining support is the last subsector: descend
                    // without spending a probe on it
                    st.level_width = measure(updated.support);
                    st.probes_in_level = 0;
                }
            }
            break;
    }
}

bool wants_probe(const PolicySpec& spec, const PolicyState& st,
                 const BeliefState& b, const FrameConfig& cfg) {
    switch (spec.kind) {
        case PolicyKind::Bisection:
        case PolicyKind::Iterative:
            return b.slot < cfg.sensing_slots;
        case PolicyKind::Exhaustive:
            return !st.detected && st.sector_index < spec.sectors;
    }
    return false;
}

ArcInterval final_beam(const BeliefState& b) {
    if (b.support.empty()) {
        throw std::invalid_argument("final_beam: empty support");
    }
    return b.support;
}

}  // namespace beamalign
