#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lvis/atom_state.hpp"
#include "lvis/constants.hpp"
#include "lvis/transport.hpp"

namespace lvis {

struct PolarAngle {
    double mean = 0.0;    // rad
    double std_error = 0.0;  // standard error of the mean, rad
};

/// Mean angle between each velocity and `reference` (unit). Throws
/// std::domain_error for an empty ensemble.
[[nodiscard]] PolarAngle mean_polar_angle(std::span<const AtomState> states, const Vec3& reference = {0.0, 0.0, 1.0});

struct TransverseTemperature {
    double v_rms = 0.0;        // sqrt(<vx^2 + vy^2>), m/s
    double temperature = 0.0;  // m v_rms^2 / (2 kB), K
};

/// RMS speed over the two molasses-damped components (x, y) and the matching
/// temperature with kB T / 2 per component. Throws std::domain_error if empty.
[[nodiscard]] TransverseTemperature transverse_temperature(std::span<const AtomState> states,
                                                           const PhysicalConstants& constants);

/// Doppler limit with N = 1, 2 or 3 orthogonal beam pairs: hbar gamma (3 + N) / (12 kB).
/// Throws std::domain_error for other N.
[[nodiscard]] double doppler_limit(int pairs, const PhysicalConstants& constants);

/// Atoms usable for beam statistics: probe states of every atom that was not step-capped.
[[nodiscard]] std::vector<AtomState> probe_ensemble(const EnsembleResult& result);

struct BeamStats {
    PolarAngle polar;
    TransverseTemperature transverse;
    std::size_t atoms = 0;
    std::size_t coupled = 0;
    double coupling_fraction = 0.0;
    double coupling_stderr = 0.0;
};

[[nodiscard]] BeamStats beam_stats(const EnsembleResult& result, const PhysicalConstants& constants);

enum class SweepParameter : std::uint8_t { detuning, saturation, waist, cavity_z };

[[nodiscard]] SweepParameter parse_sweep_parameter(std::string_view name);
[[nodiscard]] const char* to_string(SweepParameter p) noexcept;

/// Grid sweep over one parameter of a base simulation. Detuning values are in
/// units of the linewidth (delta / gamma).
struct SweepSpec {
    SweepParameter parameter = SweepParameter::detuning;
    std::vector<double> values;
    std::size_t atoms_per_point = 2000;
    BeamSimulation base;

    void validate() const;
};

struct SweepRow {
    double value = 0.0;
    BeamStats stats;
};

/// Applies one grid value to a copy of the base simulation. Each point gets a
/// stream offset derived from the value itself, so adding grid points never
/// changes the others.
[[nodiscard]] BeamSimulation sweep_point(const SweepSpec& spec, double value);

[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// run_sweep() restricted to the detuning parameter.
[[nodiscard]] std::vector<SweepRow> detuning_sweep(const SweepSpec& spec);

}  // namespace lvis
