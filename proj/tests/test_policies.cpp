#include <doctest.h>

#include <cmath>
#include <random>

#include "beamalign/policies.hpp"
#include "test_util.hpp"

using namespace beamalign;

TEST_CASE("spec parsing and naming") {
    CHECK(PolicySpec::parse("bisection").kind == PolicyKind::Bisection);
    auto ex = PolicySpec::parse("exhaustive:8");
    CHECK(ex.kind == PolicyKind::Exhaustive);
    CHECK(ex.sectors == 8);
    auto it = PolicySpec::parse("iterative:4");
    CHECK(it.kind == PolicyKind::Iterative);
    CHECK(it.division == 4);
    CHECK(it.name() == "iterative:4");
    CHECK(ex.name() == "exhaustive:8");

    CHECK_THROWS_AS(PolicySpec::parse("quadsection"), std::invalid_argument);
    CHECK_THROWS_AS(PolicySpec::parse("exhaustive:x"), std::invalid_argument);

    const FrameConfig cfg{50, 10, kTwoPi};
    CHECK_THROWS_AS(PolicySpec::exhaustive(51).validate(cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(PolicySpec::iterative(1).validate(cfg),
                    std::invalid_argument);
}

TEST_CASE("bisection beam") {
    const FrameConfig cfg{50, 10, kTwoPi};
    BeliefState b = initial_belief(cfg);
    auto beam = next_beam_bisection(b, cfg);
    CHECK(beam.start == -kPi);
    CHECK(beam.width == kPi);

    b = update_belief(b, beam, Observation{true});
    auto second = next_beam_bisection(b, cfg);
    CHECK(second.start == -kPi);
    CHECK(second.width == kPi / 2.0);

    b.slot = cfg.sensing_slots;
    CHECK_THROWS_AS(next_beam_bisection(b, cfg), std::invalid_argument);
}

TEST_CASE("exhaustive sectors") {
    const FrameConfig cfg{50, 0, kTwoPi};
    const auto spec = PolicySpec::exhaustive(4);
    PolicyState st = initial_state(spec, cfg);

    auto s0 = next_beam_exhaustive(spec, st, cfg);
    CHECK(s0.start == -kPi);
    CHECK(s0.width == doctest::Approx(kPi / 2.0).epsilon(1e-15));

    st.sector_index = 3;
    auto s3 = next_beam_exhaustive(spec, st, cfg);
    CHECK(s3.start == doctest::Approx(kPi / 2.0).epsilon(1e-15));

    st.sector_index = 4;
    CHECK_THROWS_AS(next_beam_exhaustive(spec, st, cfg), std::invalid_argument);

    // K = 1: the whole prior sector in slot 0
    const auto one = PolicySpec::exhaustive(1);
    PolicyState st1 = initial_state(one, cfg);
    auto whole = next_beam_exhaustive(one, st1, cfg);
    CHECK(whole.width == kTwoPi);
}

TEST_CASE("iterative level machine") {
    const FrameConfig cfg{50, 3, kTwoPi};
    const auto spec = PolicySpec::iterative(4);
    PolicyState st = initial_state(spec, cfg);
    BeliefState b = initial_belief(cfg);

    auto first = next_beam_iterative(spec, st, b);
    CHECK(first.start == -kPi);
    CHECK(first.width == doctest::Approx(kPi / 2.0).epsilon(1e-15));

    // MU in the last quarter: three timeouts pin it by elimination
    const double theta = 0.9 * kPi;
    for (int probe = 0; probe < 3; ++probe) {
        auto beam = next_beam_iterative(spec, st, b);
        const Observation obs{contains(beam, theta)};
        CHECK_FALSE(obs.ack);
        b = update_belief(b, beam, obs);
        advance_state(spec, st, obs, b);
    }
    CHECK(b.support.start == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(measure(b.support) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(st.probes_in_level == 0);  // descended by inference
    CHECK(st.level_width == measure(b.support));
}

TEST_CASE("final beam is the support") {
    const FrameConfig cfg{50, 3, kTwoPi};
    BeliefState b = initial_belief(cfg);
    for (int k = 0; k < 3; ++k) {
        auto beam = next_beam_bisection(b, cfg);
        b = update_belief(b, beam, Observation{k % 2 == 0});
    }
    auto data = final_beam(b);
    CHECK(data.width == kTwoPi * std::exp2(-3.0));
    CHECK(data.start == b.support.start);
}

TEST_CASE("bisection support width is path independent") {
    const int sensing = 10;
    const FrameConfig cfg{50, sensing, kTwoPi};
    std::mt19937_64 rng(29);
    for (int it = 0; it < 64; ++it) {
        BeliefState b = initial_belief(cfg);
        for (int k = 0; k < sensing; ++k) {
            auto beam = next_beam_bisection(b, cfg);
            b = update_belief(b, beam, Observation{(rng() & 1u) != 0});
        }
        CHECK(measure(b.support) == kTwoPi * std::exp2(-sensing));
    }
}

TEST_CASE("iterative with M=2 matches bisection on every observation path") {
    const int sensing = 8;
    const FrameConfig cfg{50, sensing, kTwoPi};
    const auto spec = PolicySpec::iterative(2);
    for (std::uint32_t path = 0; path < (1u << sensing); ++path) {
        BeliefState bis = initial_belief(cfg);
        BeliefState itr = initial_belief(cfg);
        PolicyState st = initial_state(spec, cfg);
        for (int k = 0; k < sensing; ++k) {
            const Observation obs{((path >> k) & 1u) != 0};
            auto beam_b = next_beam_bisection(bis, cfg);
            auto beam_i = next_beam_iterative(spec, st, itr);
            REQUIRE(beam_b.start == beam_i.start);
            REQUIRE(beam_b.width == beam_i.width);
            bis = update_belief(bis, beam_b, obs);
            itr = update_belief(itr, beam_i, obs);
            advance_state(spec, st, obs, itr);
        }
        REQUIRE(bis.support.start == itr.support.start);
        REQUIRE(bis.support.width == itr.support.width);
    }
}

TEST_CASE("support always contains the MU angle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<PolicySpec> specs = {
        PolicySpec::bisection(), PolicySpec::exhaustive(7),
        PolicySpec::iterative(3), PolicySpec::iterative(5)};
    for (const auto& spec : specs) {
        for (int it = 0; it < 200; ++it) {
            const double sigma = 0.3 + unit(rng) * (kTwoPi - 0.3);
            const FrameConfig cfg{30, 6, sigma};
            const double theta = -sigma / 2.0 + sigma * unit(rng) * 0.999999;
            BeliefState b = initial_belief(cfg);
            PolicyState st = initial_state(spec, cfg);
            while (wants_probe(spec, st, b, cfg)) {
                auto beam = next_beam(spec, st, b, cfg);
                const Observation obs{contains(beam, theta)};
                b = update_belief(b, beam, obs);
                advance_state(spec, st, obs, b);
                CHECK(contains(b.support, theta));
            }
            CHECK(contains(final_beam(b), theta));
        }
    }
}
