#pragma once

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/rng.hpp"
#include "lvis/vec3.hpp"

namespace lvis {

/// Standard deviation of a Gaussian with the given full width at half maximum.
/// Throws std::domain_error for fwhm <= 0.
[[nodiscard]] double fwhm_to_sigma(double fwhm);

/// Single-photon recoil speed hbar k / m.
[[nodiscard]] double recoil_speed(const PhysicalConstants& constants) noexcept;

/// Isotropic unit vector: cos(theta) uniform on [-1, 1], phi uniform on [0, 2 pi).
/// Consumes exactly two draws.
[[nodiscard]] Vec3 sample_unit_sphere(RngStream& rng) noexcept;

/// Ballistic flight for `dt` seconds under constant acceleration (zero unless
/// gravity is switched on).
[[nodiscard]] AtomState propagate_free(const AtomState& state, double dt, const Vec3& acceleration = {}) noexcept;

}  // namespace lvis
