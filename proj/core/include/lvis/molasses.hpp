#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/gaussian_beam.hpp"
#include "lvis/rng.hpp"

namespace lvis {

/// Counter-propagating beam pairs. Beams 2k and 2k+1 form a pair; for the
/// standard 2-D molasses, beams 0/1 run along +x/-x and 2/3 along +y/-y.
/// The interaction region is the union of the beams' 1/e^2 cylinders.
struct MolassesConfig {
    std::vector<GaussianBeam> beams;

    /// Throws std::invalid_argument unless the beams form anti-parallel pairs.
    void validate() const;
};

struct MolassesParams {
    Vec3 center{};
    double waist = 7.5e-3;      // m
    double saturation = 3.0;    // s0 per beam
    double detuning = 0.0;      // rad/s
};

/// Four-beam 2-D molasses in the x-y plane, all beams crossing at `center`.
[[nodiscard]] MolassesConfig make_molasses(const MolassesParams& params);

[[nodiscard]] bool inside_region(const MolassesConfig& cfg, const Vec3& position, double wavelength) noexcept;

/// Called with each ballistic segment (start state, duration). Returning true
/// stops the evolution: the atom was intercepted (e.g. by the cavity mode).
using SegmentObserver = std::function<bool(const AtomState& start, double dt)>;

struct EvolveOptions {
    std::uint64_t step_cap = 10'000'000;
    std::size_t record_stride = 0;   // 0: record entry and exit only
    Vec3 acceleration{};             // m/s^2
    double flight_step = 1e-4;       // max path length per sub-step in unlit flight, m
    std::uint64_t atom_id = 0;       // reported in diagnostics
};

enum class MolassesStatus : std::uint8_t { exited, intercepted };

struct MolassesRun {
    AtomState final_state;
    std::vector<AtomState> trajectory;
    std::uint64_t events = 0;
    MolassesStatus status = MolassesStatus::exited;
};

class StepCapExceeded : public std::runtime_error {
public:
    StepCapExceeded(std::uint64_t atom_id, std::uint64_t events)
        : std::runtime_error("atom " + std::to_string(atom_id) + " exceeded the scattering step cap (" +
                             std::to_string(events) + " events)"),
          atom_id_{atom_id} {}
    [[nodiscard]] std::uint64_t atom_id() const noexcept { return atom_id_; }

private:
    std::uint64_t atom_id_;
};

/// Two-level Monte Carlo evolution through the light field.
///
/// Loop: evaluate gamma_p at the current state, draw an exponential wait,
/// fly ballistically, pick the absorbed beam by its share of gamma_p, apply
/// both recoils. Ends when the atom leaves the 1/e^2 region; the exit state is
/// placed on the boundary. An atom that starts outside returns immediately.
/// Throws StepCapExceeded after `step_cap` events.
[[nodiscard]] MolassesRun evolve_in_molasses(const AtomState& state, const MolassesConfig& cfg,
                                             const PhysicalConstants& constants, RngStream& rng,
                                             const EvolveOptions& options = {},
                                             const SegmentObserver& observer = {});

/// Ballistic flight until the atom enters the region. Returns nullopt if it
/// does not do so within `max_time`, or if `observer` intercepts it first
/// (then `intercepted` is set).
[[nodiscard]] std::optional<AtomState> fly_to_region(const AtomState& state, const MolassesConfig& cfg,
                                                     double wavelength, double max_time, const EvolveOptions& options,
                                                     const SegmentObserver& observer, bool* intercepted = nullptr);

}  // namespace lvis
