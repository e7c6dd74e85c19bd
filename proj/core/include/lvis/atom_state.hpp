#pragma once

#include <cstdint>

#include "lvis/vec3.hpp"

namespace lvis {

enum class QuantizationAxis : std::uint8_t { x, y };

/// Magnetic sublevels of a J=1/2 -> J'=3/2 transition, indexed 0..5.
/// Ground levels come first; the two-level engine leaves the sublevel untouched.
enum class Sublevel : std::uint8_t {
    ground_minus_half = 0,
    ground_plus_half = 1,
    excited_minus_three_halves = 2,
    excited_minus_half = 3,
    excited_plus_half = 4,
    excited_plus_three_halves = 5,
};

struct InternalState {
    Sublevel level = Sublevel::ground_minus_half;
    QuantizationAxis axis = QuantizationAxis::x;

    friend constexpr bool operator==(const InternalState&, const InternalState&) = default;
};

/// Kinematic and internal state of one simulated atom.
struct AtomState {
    Vec3 position;   // m
    Vec3 velocity;   // m/s
    InternalState internal;
    double t = 0.0;  // s since launch

    friend constexpr bool operator==(const AtomState&, const AtomState&) = default;
};

}  // namespace lvis
