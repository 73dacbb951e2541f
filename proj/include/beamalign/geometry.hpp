#pragma once

#include <vector>

namespace beamalign {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Absolute tolerance for angle comparisons.
inline constexpr double kAngleTol = 1e-12;
// Widths below this are treated as empty.
inline constexpr double kEmptyWidth = 1e-15;

/// Reduce an angle to [-pi, pi). Throws on non-finite input.
double normalize_angle(double theta);

/// Contiguous angular interval on the circle, closed at start, open at
/// the end, so consecutive sectors partition the circle without
/// double-counting. width == 2*pi is the full circle.
struct ArcInterval {
    double start = 0.0;  // normalized to [-pi, pi)
    double width = 0.0;  // in [0, 2*pi]

    ArcInterval() = default;
    ArcInterval(double start_angle, double arc_width);

    double end() const;       // normalized end angle
    double midpoint() const;  // normalized midpoint

    bool empty() const { return width < kEmptyWidth; }
    bool full_circle() const { return width >= kTwoPi - kAngleTol; }
};

double measure(const ArcInterval& a);
bool contains(const ArcInterval& a, double theta);
ArcInterval rotate(const ArcInterval& a, double delta);
ArcInterval complement(const ArcInterval& a);

/// Exact set intersection on the circle; 0, 1, or 2 disjoint pieces.
std::vector<ArcInterval> intersect(const ArcInterval& a, const ArcInterval& b);

/// a with b removed, as disjoint pieces.
std::vector<ArcInterval> subtract(const ArcInterval& a, const ArcInterval& b);

double total_measure(const std::vector<ArcInterval>& pieces);

/// Join pieces that share an endpoint on the circle into one arc.
std::vector<ArcInterval> merge_adjacent(std::vector<ArcInterval> pieces);

struct ArcHalves {
    ArcInterval lower;
    ArcInterval upper;
};

/// Split u at its midpoint. Each half has exactly half the measure.
ArcHalves halves(const ArcInterval& u);

}  // namespace beamalign
