#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/gaussian_beam.hpp"
#include "lvis/molasses.hpp"
#include "lvis/rng.hpp"

namespace lvis {

/// Squared Clebsch-Gordan weights of a J=1/2 -> J'=3/2 transition driven by
/// sigma+/sigma- light only.
///
/// `excitation[q][g]`: q = 0 for sigma+, 1 for sigma-; g = 0 for m=-1/2, 1 for
/// m=+1/2. `decay[e][g]`: e indexes m' = -3/2, -1/2, +1/2, +3/2. Decay rows are
/// branching ratios and sum to one.
struct TransitionWeights {
    std::array<std::array<double, 2>, 2> excitation{};
    std::array<std::array<double, 2>, 4> decay{};

    /// Stretched transitions weight 1, the weak sigma transitions 1/3.
    [[nodiscard]] static TransitionWeights standard() noexcept;

    /// Every allowed coefficient set to 1 (decays renormalized). Reduces the
    /// six-level engine to the two-level one.
    [[nodiscard]] static TransitionWeights unit() noexcept;

    /// Throws std::invalid_argument if any decay row does not sum to 1.
    void validate() const;
};

[[nodiscard]] constexpr bool is_ground(Sublevel level) noexcept {
    return level == Sublevel::ground_minus_half || level == Sublevel::ground_plus_half;
}

/// Beams 0/1 define the x axis, 2/3 the y axis. Throws std::out_of_range otherwise.
[[nodiscard]] QuantizationAxis quantization_axis_for_beam(std::size_t beam_index);

/// Re-expresses a ground state in a new quantization basis. A 90 degree
/// rotation of a spin-1/2 gives |d^{1/2}_{m m'}(pi/2)|^2 = 1/2 for every pair,
/// so the sublevel is redrawn with equal odds. Same axis: identity, no draw.
/// Throws std::logic_error for an excited state.
[[nodiscard]] InternalState reproject_state(const InternalState& state, QuantizationAxis axis, RngStream& rng);

/// Unpolarized ground state along x.
[[nodiscard]] InternalState sample_ground_state(RngStream& rng) noexcept;

/// Excitation weight for `polarization` acting on `ground`.
[[nodiscard]] double excitation_weight(Polarization polarization, Sublevel ground, const TransitionWeights& weights);

/// CG weight for beam `beam_index` given the atom's internal state. If the
/// beam's axis differs from the atom's current axis the sublevel along the
/// beam's axis is unknown and the weight is averaged over it.
[[nodiscard]] double beam_weight(std::size_t beam_index, const GaussianBeam& beam, const InternalState& internal,
                                 const TransitionWeights& weights);

/// Beam saturation (Doppler shifted) scaled by the CG weight.
[[nodiscard]] double weighted_saturation(std::size_t beam_index, const GaussianBeam& beam, const AtomState& state,
                                         const PhysicalConstants& constants, const TransitionWeights& weights);

/// Total scattering rate from weighted saturations.
[[nodiscard]] double weighted_scattering_rate(std::span<const GaussianBeam> beams, const AtomState& state,
                                              const PhysicalConstants& constants, const TransitionWeights& weights);

/// Internal part of an absorption-emission cycle: switch to the beam's axis
/// (reprojecting if needed), excite with the beam's polarization, decay by
/// the branching ratios. Draws come from `internal_rng`.
[[nodiscard]] InternalState cycle_internal_state(const InternalState& state, std::size_t beam_index,
                                                 const GaussianBeam& beam, RngStream& internal_rng,
                                                 const TransitionWeights& weights);

/// Full six-level event: internal cycle plus the same two recoil kicks as the
/// two-level engine (kinematic draws from `rng`).
[[nodiscard]] AtomState apply_multilevel_event(const AtomState& state, std::size_t beam_index,
                                               const GaussianBeam& beam, RngStream& rng, RngStream& internal_rng,
                                               const PhysicalConstants& constants, const TransitionWeights& weights);

/// Six-level counterpart of evolve_in_molasses(). Kinematic draws use `rng`
/// exactly as the two-level engine does; internal-state draws use `internal_rng`.
[[nodiscard]] MolassesRun evolve_in_molasses_six_level(const AtomState& state, const MolassesConfig& cfg,
                                                       const PhysicalConstants& constants, RngStream& rng,
                                                       RngStream& internal_rng, const TransitionWeights& weights,
                                                       const EvolveOptions& options = {},
                                                       const SegmentObserver& observer = {});

}  // namespace lvis
