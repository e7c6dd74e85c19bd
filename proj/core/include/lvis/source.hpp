#pragma once

#include "lvis/atom_state.hpp"
#include "lvis/rng.hpp"
#include "lvis/vec3.hpp"

namespace lvis {

/// Geometry and velocity distribution of the atomic beam leaving the mirror hole.
struct SourceConfig {
    double hole_diameter = 1.5e-3;    // D_h, m
    double mot_to_hole = 70e-3;       // d_mh, m (not measured on the apparatus; see README)
    double mean_speed = 14.0;         // v0, m/s
    double speed_fwhm = 2.7;          // m/s
    double polar_angle = 0.0;         // theta, rad, between beam axis and +z
    double azimuthal_angle = 0.0;     // phi, rad
    Vec3 hole_center{};               // m

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;

    /// Unit vector along the launch axis.
    [[nodiscard]] Vec3 axis() const noexcept;
};

/// Geometric collimation limit of the aperture: (D_h / d_mh) v0.
[[nodiscard]] double max_transverse_speed(const SourceConfig& cfg) noexcept;

/// Draws one atom at the hole exit.
///
/// Position is uniform over the hole disk, transverse velocity uniform over a
/// disk of radius max_transverse_speed(), and longitudinal speed Gaussian
/// (truncated to positive values). The sampled state lives in the source frame
/// and is then rotated so the beam axis points along (theta, phi).
[[nodiscard]] AtomState sample_initial_state(const SourceConfig& cfg, RngStream& rng);

}  // namespace lvis
