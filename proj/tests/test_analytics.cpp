#include <doctest.h>

#include <cmath>
#include <random>

#include "beamalign/analytics.hpp"
#include "beamalign/simulator.hpp"

using namespace beamalign;

namespace {

const FrameConfig kFrame{50, 0, kTwoPi};
const ChannelParams kChannel = ChannelParams::from_db(-5.0);
const double kSigma = kTwoPi;

FrameConfig with_l(int l) { return FrameConfig{50, l, kTwoPi}; }

}  // namespace

TEST_CASE("value_upper_bound identities") {
    const auto cfg = with_l(10);
    const double u = 0.37;

    // terminal slot: plain one-step bound
    const double gl = gamma_l(kChannel, cfg);
    CHECK(value_upper_bound(u, 10, cfg, kChannel) ==
          doctest::Approx(0.8 * std::log2(1.0 + gl / u)).epsilon(1e-14));

    // slot 0 with the full prior equals the closed-form optimum
    CHECK(value_upper_bound(kSigma, 0, cfg, kChannel) ==
          doctest::Approx(optimal_throughput(kSigma, 10, cfg, kChannel))
              .epsilon(1e-14));

    // halving u at fixed k equals stepping k -> k-1 at fixed u
    CHECK(value_upper_bound(u / 2.0, 5, cfg, kChannel) ==
          doctest::Approx(value_upper_bound(u, 4, cfg, kChannel))
              .epsilon(1e-14));

    CHECK(value_upper_bound(u, 3, FrameConfig{50, 50, kTwoPi}, kChannel) == 0.0);
}

TEST_CASE("optimal_throughput reference values") {
    CHECK(optimal_throughput(kSigma, 0, kFrame, kChannel) ==
          doctest::Approx(0.07084159287128425).epsilon(1e-12));
    CHECK(optimal_throughput(kSigma, 10, kFrame, kChannel) ==
          doctest::Approx(4.825352432266662).epsilon(1e-12));
    CHECK(optimal_throughput(kSigma, 50, kFrame, kChannel) == 0.0);
}

TEST_CASE("exhaustive expected throughput") {
    // K = 1: J is identically 0
    const int n = kFrame.num_slots;
    const double k1 = static_cast<double>(n - 1) / n *
                      std::log2(1.0 + n * kChannel.gamma0 /
                                          ((n - 1) * kSigma));
    CHECK(exhaustive_expected_throughput(kSigma, 1, kFrame, kChannel) ==
          doctest::Approx(k1).epsilon(1e-14));

    CHECK(exhaustive_expected_throughput(kSigma, 5, kFrame, kChannel) ==
          doctest::Approx(0.32166233556250945).epsilon(1e-12));

    for (int k = 2; k <= n; ++k) {
        CHECK(exhaustive_expected_throughput(kSigma, k, kFrame, kChannel) <
              exhaustive_upper_bound(kSigma, k, kFrame, kChannel));
    }
}

TEST_CASE("exhaustive upper bound") {
    CHECK(exhaustive_upper_bound(kSigma, 50, kFrame, kChannel) ==
          doctest::Approx(1.2964283704929032).epsilon(1e-12));

    // K = 1 -> mean duration 1, factor 2*1 inside the log
    const int n = kFrame.num_slots;
    const double expected = static_cast<double>(n - 1) / n *
                            std::log2(1.0 + n * 2.0 * kChannel.gamma0 /
                                                ((n - 1) * kSigma));
    CHECK(exhaustive_upper_bound(kSigma, 1, kFrame, kChannel) ==
          doctest::Approx(expected).epsilon(1e-14));

    // bound is itself dominated by the bisection optimum once 2^L > 2L
    for (int k = 5; k <= n; ++k) {
        const int lf = (k + 1) / 2;
        if (lf >= 3) {
            CHECK(exhaustive_upper_bound(kSigma, k, kFrame, kChannel) <
                  optimal_throughput(kSigma, lf, kFrame, kChannel));
        }
    }
}

TEST_CASE("bisection dominates exhaustive search") {
    for (int k = 1; k <= kFrame.num_slots; ++k) {
        const int lf = (k + 1) / 2;
        CHECK(optimal_throughput(kSigma, lf, kFrame, kChannel) >
              exhaustive_expected_throughput(kSigma, k, kFrame, kChannel));
    }
}

TEST_CASE("iterative with M=2 equals the closed form exactly") {
    for (int l = 0; l <= kFrame.num_slots; ++l) {
        CHECK(iterative_expected_throughput(kSigma, 2, l, kFrame, kChannel) ==
              optimal_throughput(kSigma, l, kFrame, kChannel));
    }
}

TEST_CASE("iterative with L=0 has no refinement") {
    for (int m : {2, 3, 4, 8}) {
        CHECK(iterative_expected_throughput(kSigma, m, 0, kFrame, kChannel) ==
              optimal_throughput(kSigma, 0, kFrame, kChannel));
    }
}

TEST_CASE("iterative enumeration agrees with Monte Carlo") {
    const auto cfg = with_l(3);
    const double analytic =
        iterative_expected_throughput(kSigma, 4, 3, cfg, kChannel);
    const auto mc = run_monte_carlo(PolicySpec::iterative(4), cfg, kChannel,
                                    100000, 99);
    CHECK(std::fabs(mc.mean - analytic) <= 3.0 * mc.std_error);
}

TEST_CASE("sensing duration optimization") {
    const auto opt = optimize_sensing_duration(kSigma, kFrame, kChannel);
    CHECK(opt.best_l == 27);
    CHECK(opt.throughput == doctest::Approx(10.951603711320644).epsilon(1e-12));

    // full discrete scan agrees
    int scan_best = 0;
    double scan_v = optimal_throughput(kSigma, 0, kFrame, kChannel);
    for (int l = 1; l <= kFrame.num_slots; ++l) {
        const double v = optimal_throughput(kSigma, l, kFrame, kChannel);
        if (v > scan_v) {
            scan_v = v;
            scan_best = l;
        }
    }
    CHECK(opt.best_l == scan_best);
    CHECK(opt.throughput == scan_v);

    // richer channels need less sensing: L* is monotone in gamma0
    const auto rich = optimize_sensing_duration(
        kSigma, kFrame, ChannelParams{1e6, {}});
    CHECK(rich.best_l == 17);
    CHECK(rich.best_l < opt.best_l);

    // N = 1: the only slot must carry data
    const auto tiny = optimize_sensing_duration(
        kSigma, FrameConfig{1, 0, kTwoPi}, kChannel);
    CHECK(tiny.best_l == 0);
}

TEST_CASE("optimizer matches the scan on random instances") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> n_draw(2, 200);
    std::uniform_real_distribution<double> logg(-3.0, 3.0);
    std::uniform_real_distribution<double> sig(0.01, kTwoPi);
    for (int it = 0; it < 100; ++it) {
        const FrameConfig cfg{n_draw(rng), 0, kTwoPi};
        const ChannelParams cp{std::pow(10.0, logg(rng)), {}};
        const double sigma = sig(rng);
        const auto opt = optimize_sensing_duration(sigma, cfg, cp);
        double best = -1.0;
        int best_l = 0;
        for (int l = 0; l <= cfg.num_slots; ++l) {
            const double v = optimal_throughput(sigma, l, cfg, cp);
            if (v > best) {
                best = v;
                best_l = l;
            }
        }
        CHECK(opt.best_l == best_l);
        CHECK(opt.throughput == best);
    }
}

TEST_CASE("log-concavity of the optimum in L") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> n_draw(3, 200);
    std::uniform_real_distribution<double> logg(-3.0, 3.0);
    std::uniform_real_distribution<double> sig(0.01, kTwoPi);
    for (int it = 0; it < 100; ++it) {
        const FrameConfig cfg{n_draw(rng), 0, kTwoPi};
        const ChannelParams cp{std::pow(10.0, logg(rng)), {}};
        const double sigma = sig(rng);
        for (int l = 1; l + 1 <= cfg.num_slots - 1; ++l) {
            const double a = std::log(optimal_throughput(sigma, l - 1, cfg, cp));
            const double b = std::log(optimal_throughput(sigma, l, cfg, cp));
            const double c = std::log(optimal_throughput(sigma, l + 1, cfg, cp));
            CHECK(a - 2.0 * b + c < 0.0);
        }
    }
}

TEST_CASE("perspective of log2(1+x) satisfies the Jensen bound") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> xs(0.01, 100.0);
    std::uniform_real_distribution<double> ts(0.001, 0.999);
    for (int it = 0; it < 2000; ++it) {
        const double x = xs(rng);
        const double t1 = ts(rng);
        const double t2 = 1.0 - t1;
        const double lhs = 0.5 * t1 * std::log2(1.0 + x / t1) +
                           0.5 * t2 * std::log2(1.0 + x / t2);
        const double rhs = 0.5 * std::log2(1.0 + 2.0 * x);
        CHECK(lhs <= rhs + 1e-12);
        if (std::fabs(t1 - 0.5) > 1e-4) {
            CHECK(lhs < rhs);
        }
    }
}

TEST_CASE("peak throughput degradations in the reference scenario") {
    const auto bis = peak_throughput(PolicySpec::bisection(), kSigma, kFrame,
                                     kChannel);
    CHECK(bis.best_parameter == 27);
    CHECK(bis.throughput == doctest::Approx(10.951603711320644).epsilon(1e-12));

    const auto it4 = peak_throughput(PolicySpec::iterative(4), kSigma, kFrame,
                                     kChannel);
    const auto it8 = peak_throughput(PolicySpec::iterative(8), kSigma, kFrame,
                                     kChannel);
    const auto exh = peak_throughput(PolicySpec::exhaustive(1), kSigma, kFrame,
                                     kChannel);

    auto degradation = [&](const PolicyPeak& p) {
        return 100.0 * (1.0 - p.throughput / bis.throughput);
    };
    CHECK(degradation(it4) == doctest::Approx(12.81).epsilon(0.01));
    CHECK(degradation(it8) == doctest::Approx(36.43).epsilon(0.01));
    CHECK(degradation(exh) == doctest::Approx(88.83).epsilon(0.01));
    CHECK(exh.best_parameter == 42);
}
