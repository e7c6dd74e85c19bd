#pragma once

#include <string>

namespace lvis {

/// A cavity mirror as measured on the bench.
struct MirrorSpec {
    double transmission = 0.0;          // intensity transmission T
    double radius_of_curvature = 0.45;  // m
    double loss = 0.0;                  // absorption + scatter per bounce
    std::string label;
};

/// Finesse of a two-mirror cavity from the mirror transmissions, assuming
/// negligible absorption: pi / (1 - sqrt((1 - T1)(1 - T2))).
/// Throws std::domain_error for T outside [0, 1) or T1 = T2 = 0.
[[nodiscard]] double finesse(double t1, double t2);

/// Finesse with an extra per-mirror loss folded into each round-trip factor.
[[nodiscard]] double finesse(double t1, double t2, double loss1, double loss2);

[[nodiscard]] double finesse(const MirrorSpec& m1, const MirrorSpec& m2);

/// Share of transmitted photons leaving through mirror 2: T2 / (T1 + T2).
[[nodiscard]] double output_fraction(double t1, double t2);

}  // namespace lvis
