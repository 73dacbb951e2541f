#include "beamalign/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace beamalign {

double normalize_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("normalize_angle: non-finite angle");
    }
    double r = std::remainder(theta, kTwoPi);  // (-pi, pi], ties to even
    if (r >= kPi) {
        r -= kTwoPi;
    }
    return r;
}

ArcInterval::ArcInterval(double start_angle, double arc_width) {
    if (!std::isfinite(arc_width) || arc_width < -kAngleTol ||
        arc_width > kTwoPi + kAngleTol) {
        throw std::invalid_argument("ArcInterval: width outside [0, 2*pi]");
    }
    start = normalize_angle(start_angle);
    width = std::fmin(std::fmax(arc_width, 0.0), kTwoPi);
}

double ArcInterval::end() const {
    return normalize_angle(start + width);
}

double ArcInterval::midpoint() const {
    return normalize_angle(start + width / 2.0);
}

double measure(const ArcInterval& a) {
    return a.width;
}

namespace {

// Offset of theta from a.start, reduced to [0, 2*pi).
double frame_offset(const ArcInterval& a, double theta) {
    double d = normalize_angle(theta) - a.start;
    d -= kTwoPi * std::floor(d / kTwoPi);
    if (d >= kTwoPi - kAngleTol) {
        d = 0.0;
    }
    return d;
}

}  // namespace

bool contains(const ArcInterval& a, double theta) {
    if (a.empty()) {
        return false;
    }
    if (a.full_circle()) {
        return true;
    }
    return frame_offset(a, theta) < a.width;
}

ArcInterval rotate(const ArcInterval& a, double delta) {
    return ArcInterval(a.start + delta, a.width);
}

ArcInterval complement(const ArcInterval& a) {
    if (a.empty()) {
        return ArcInterval(-kPi, kTwoPi);
    }
    return ArcInterval(a.start + a.width, kTwoPi - a.width);
}

std::vector<ArcInterval> intersect(const ArcInterval& a, const ArcInterval& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    if (a.full_circle()) {
        return {b};
    }
    if (b.full_circle()) {
        return {a};
    }

    // Work in the frame anchored at a.start, where a covers [0, a.width]
    // and b covers [s, s + b.width], possibly wrapping past 2*pi.
    const double s = frame_offset(a, b.start);
    std::vector<ArcInterval> out;
    auto clip = [&](double lo, double hi) {
        lo = std::fmax(lo, 0.0);
        hi = std::fmin(hi, a.width);
        if (hi - lo >= kAngleTol) {
            out.emplace_back(a.start + lo, hi - lo);
        }
    };
    clip(s, s + b.width);
    if (s + b.width > kTwoPi + kAngleTol) {
        clip(0.0, s + b.width - kTwoPi);
    }
    return out;
}

std::vector<ArcInterval> subtract(const ArcInterval& a, const ArcInterval& b) {
    if (a.empty() || b.full_circle()) {
        return {};
    }
    if (b.empty()) {
        return {a};
    }
    // Exact paths for a prefix or suffix of a, so that repeated halving
    // keeps widths bit-exact.
    const double s = frame_offset(a, b.start);
    if (s == 0.0) {
        if (b.width >= a.width) {
            return {};
        }
        return {ArcInterval(a.start + b.width, a.width - b.width)};
    }
    if (s < a.width && std::fabs(s + b.width - a.width) <= kAngleTol) {
        return {ArcInterval(a.start, s)};
    }
    return intersect(a, complement(b));
}

double total_measure(const std::vector<ArcInterval>& pieces) {
    double sum = 0.0;
    for (const auto& p : pieces) {
        sum += p.width;
    }
    return sum;
}

std::vector<ArcInterval> merge_adjacent(std::vector<ArcInterval> pieces) {
    bool merged = true;
    while (merged && pieces.size() > 1) {
        merged = false;
        for (std::size_t i = 0; i < pieces.size() && !merged; ++i) {
            for (std::size_t j = 0; j < pieces.size() && !merged; ++j) {
                if (i == j) {
                    continue;
                }
                const double w = pieces[i].width + pieces[j].width;
                if (w > kTwoPi + kAngleTol) {
                    continue;
                }
                const double gap =
                    normalize_angle(pieces[j].start - pieces[i].end());
                if (std::fabs(gap) <= kAngleTol) {
                    pieces[i] = ArcInterval(pieces[i].start, std::fmin(w, kTwoPi));
                    pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }
    return pieces;
}

ArcHalves halves(const ArcInterval& u) {
    if (u.empty()) {
        throw std::invalid_argument("halves: zero-measure interval");
    }
    const double half = u.width / 2.0;
    return ArcHalves{ArcInterval(u.start, half),
                     ArcInterval(u.start + half, half)};
}

}  // namespace beamalign
