#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/molasses.hpp"
#include "lvis/multilevel.hpp"
#include "lvis/source.hpp"

namespace lvis {

/// TEM00 mode between the cavity mirrors. The coupling volume is a cylinder of
/// radius `waist` about the mode axis, cut to the mirror gap.
struct CavityGeometry {
    double waist = 56e-6;           // 1/e field radius, m
    double gap = 2.2e-3;            // mirror spacing, m
    Vec3 center{0.0, 0.0, 0.04};    // m
    Vec3 axis{1.0, 0.0, 0.0};       // unit, horizontal

    void validate() const;
};

/// Axis-aligned vacuum box; atoms leaving it have hit the wall.
struct ChamberGeometry {
    double half_width = 0.05;  // |x|, |y| limit, m
    double z_min = -0.05;      // m
    double z_max = 0.06;       // m

    void validate() const;
    [[nodiscard]] bool contains(const Vec3& p) const noexcept;
};

/// Point test: within one waist of the mode axis and between the mirrors.
[[nodiscard]] bool check_coupling(const AtomState& state, const CavityGeometry& cavity) noexcept;

/// Earliest time in [0, dt] at which the straight path from `start` satisfies
/// check_coupling(), if any.
[[nodiscard]] std::optional<double> first_coupling_time(const AtomState& start, double dt,
                                                        const CavityGeometry& cavity) noexcept;

/// Time until a straight path leaves the chamber (0 if already outside).
[[nodiscard]] double time_to_wall(const AtomState& state, const ChamberGeometry& chamber) noexcept;

enum class Engine : std::uint8_t { two_level, six_level };
enum class Outcome : std::uint8_t { coupled, wall, step_cap };

[[nodiscard]] const char* to_string(Outcome outcome) noexcept;
[[nodiscard]] const char* to_string(Engine engine) noexcept;

struct AtomRecord {
    std::uint64_t id = 0;
    Outcome outcome = Outcome::wall;
    AtomState launch;
    AtomState probe;        // molasses exit (or launch if it never entered), plus probe offset
    AtomState final_state;  // at coupling, at the wall, or where the step cap hit
    std::uint64_t events = 0;
    bool entered_light = false;
};

struct BeamSimulation {
    SourceConfig source;
    std::optional<MolassesConfig> light;    // molasses or lens beams
    std::optional<CavityGeometry> cavity;
    ChamberGeometry chamber;
    PhysicalConstants constants;
    Engine engine = Engine::two_level;
    TransitionWeights weights = TransitionWeights::standard();
    EvolveOptions evolve;
    std::size_t atoms = 1000;
    std::uint64_t seed = 1;
    std::uint64_t stream_offset = 0;        // atom i uses stream stream_offset + i
    unsigned threads = 1;
    double probe_offset = 0.0;              // extra flight past the light exit, m along z
    bool keep_trajectories = false;
    bool exclude_step_cap = false;          // drop step-capped atoms from the fraction's denominator
    bool strict = false;                    // rethrow StepCapExceeded

    void validate() const;
};

struct EnsembleResult {
    std::vector<AtomRecord> atoms;                      // sorted by id
    std::vector<std::vector<AtomState>> trajectories;   // per atom, when requested
    std::size_t coupled = 0;
    std::size_t wall = 0;
    std::size_t step_capped = 0;
    double coupling_fraction = 0.0;
    double coupling_stderr = 0.0;                       // binomial

    [[nodiscard]] std::vector<AtomState> probe_states() const;
};

/// Traces one atom from the hole to its outcome.
[[nodiscard]] AtomRecord simulate_atom(const BeamSimulation& sim, std::uint64_t id,
                                       std::vector<AtomState>* trajectory = nullptr);

/// Full ensemble; output is independent of `threads`.
[[nodiscard]] EnsembleResult run_beam_simulation(const BeamSimulation& sim);

}  // namespace lvis
