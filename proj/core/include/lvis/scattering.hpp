#pragma once

#include <cstddef>
#include <span>

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/gaussian_beam.hpp"
#include "lvis/rng.hpp"

namespace lvis {

/// Doppler-detuned saturation for a given local saturation s0g.
[[nodiscard]] inline double detuned_saturation(double local, const GaussianBeam& beam, const Vec3& velocity,
                                               const PhysicalConstants& c) noexcept {
    const double doppler = c.wavenumber() * beam.direction.dot(velocity);
    const double x = 2.0 * (beam.detuning - doppler) / c.linewidth;
    return local / (1.0 + x * x);
}

/// Saturation parameter of one beam seen by a moving atom:
/// s_i = s0g / (1 + (2 (delta - k.v) / gamma)^2), with s0g the local saturation.
[[nodiscard]] double beam_saturation(const GaussianBeam& beam, const AtomState& state,
                                     const PhysicalConstants& constants) noexcept;

/// Steady-state photon scattering rate gamma/2 * sT / (1 + sT).
[[nodiscard]] double scattering_rate(double total_saturation, const PhysicalConstants& constants) noexcept;

/// Total rate from independent (non-interfering) beams, sT = sum_i s_i.
[[nodiscard]] double total_scattering_rate(std::span<const GaussianBeam> beams, const AtomState& state,
                                           const PhysicalConstants& constants) noexcept;

/// Per-beam share of the total rate, gamma/2 * s_i / (1 + sT). The shares sum to
/// total_scattering_rate().
[[nodiscard]] double partial_scattering_rate(double beam_saturation, double total_saturation,
                                             const PhysicalConstants& constants) noexcept;

/// Exponential waiting time by inverse transform. Consumes one draw.
/// Throws std::domain_error for rate <= 0.
[[nodiscard]] double sample_wait_time(double rate, RngStream& rng);

/// Chooses index i with probability weight[i] / sum(weight). Consumes one draw.
/// Throws std::domain_error when every weight is zero (atom outside the light).
[[nodiscard]] std::size_t select_absorption_beam(std::span<const double> weights, RngStream& rng);

/// Same as above with weights gamma_{p,i} computed for `state`.
[[nodiscard]] std::size_t select_absorption_beam(std::span<const GaussianBeam> beams, const AtomState& state,
                                                 const PhysicalConstants& constants, RngStream& rng);

/// Absorption from `beam` plus isotropic re-emission: two recoil kicks of hbar k / m.
/// Position and internal state are unchanged. Consumes two draws.
[[nodiscard]] AtomState apply_scattering_event(const AtomState& state, const GaussianBeam& beam, RngStream& rng,
                                               const PhysicalConstants& constants) noexcept;

}  // namespace lvis
