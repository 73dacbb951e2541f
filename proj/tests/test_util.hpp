#pragma once

#include <cmath>
#include <random>

#include "beamalign/geometry.hpp"

namespace beamalign::testing {

inline ArcInterval random_arc(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> width(0.05, kTwoPi - 0.05);
    return ArcInterval(angle(rng), width(rng));
}

// 99th percentile of the chi-squared distribution (Wilson-Hilferty).
inline double chi2_quantile_99(int dof) {
    const double d = static_cast<double>(dof);
    const double z = 2.3263478740408408;  // standard normal 0.99 quantile
    const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

}  // namespace beamalign::testing
