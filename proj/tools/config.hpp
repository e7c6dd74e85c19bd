#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <lvis/analysis.hpp>
#include <lvis/lens.hpp>
#include <lvis/transport.hpp>

namespace lvis::app {

enum class Mode : std::uint8_t { beam, deflect, sweep, lens, finesse };

[[nodiscard]] Mode parse_mode(std::string_view name);
[[nodiscard]] const char* to_string(Mode mode) noexcept;

/// Raised for malformed or inconsistent configuration text. `line` is 0 when
/// the problem is not tied to a single line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_{line} {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Sections mirror the config file: SI units, angles in degrees, detunings in
// units of the linewidth.

struct RunSection {
    std::string engine = "two-level";
    std::uint64_t atoms = 1000;
    std::uint64_t seed = 1;
    std::uint64_t threads = 0;        // 0: one per hardware thread
    bool strict = false;
    bool trajectories = false;
    std::uint64_t record_stride = 0;
    std::uint64_t step_cap = 10'000'000;
    double gravity = 0.0;           // m/s^2 along +z (the beam travels down)
    double probe_offset = 0.0;      // m past the light exit
    bool exclude_step_cap = false;
};

struct SourceSection {
    double hole_diameter = 1.5e-3;
    double mot_to_hole = 0.07;
    double mean_speed = 14.0;
    double speed_fwhm = 2.7;
    double polar_angle = 0.0;       // deg
    double azimuthal_angle = 0.0;   // deg
    double hole_x = 0.0, hole_y = 0.0, hole_z = 0.0;
};

struct MolassesSection {
    double center_x = 0.0, center_y = 0.0, center_z = 0.0;
    double waist = 7.5e-3;
    double saturation = 3.0;
    double detuning_gamma = -0.5;
};

struct LensSection {
    double focus_waist = 0.5e-6;
    double center_spot = 5e-3;
    double saturation = 3.0;
    double detuning_gamma = -3.0;
    double center_x = 0.0, center_y = 0.0, center_z = 0.05;
    bool two_dimensional = true;
    double probe_start = 0.056, probe_stop = 0.256, probe_step = 0.005;
    double focus_margin = 0.05;
    double map_min = -2e-3, map_max = 2e-3, map_step = 1e-4;
};

struct CavitySection {
    double waist = 56e-6;
    double gap = 2.2e-3;
    double center_x = 0.0, center_y = 0.0, center_z = 0.04;
    double axis_x = 1.0, axis_y = 0.0, axis_z = 0.0;
};

struct ChamberSection {
    double half_width = 0.05;
    double z_min = -0.05;
    double z_max = 0.06;
};

struct SweepSection {
    std::string parameter = "detuning";
    std::vector<double> values;
    std::uint64_t atoms_per_point = 2000;
};

struct FinesseSection {
    double t1_ppm = 8.0;
    double t2_ppm = 297.0;
    double loss1_ppm = 0.0;
    double loss2_ppm = 0.0;
};

struct ConstantsSection {
    double wavelength = 780.241e-9;
    double linewidth_hz = 6.0666e6;   // gamma / 2 pi
    double mass = 84.9118 * si::atomic_mass_unit;
};

struct RunConfig {
    Mode mode = Mode::beam;
    std::set<std::string> sections;   // sections present in the source text
    RunSection run;
    SourceSection source;
    MolassesSection molasses;
    LensSection lens;
    CavitySection cavity;
    ChamberSection chamber;
    SweepSection sweep;
    FinesseSection finesse;
    ConstantsSection constants;

    [[nodiscard]] bool has(std::string_view section) const { return sections.contains(std::string(section)); }
};

/// Sections a mode needs and those it accepts.
[[nodiscard]] std::vector<std::string> required_sections(Mode mode, const RunConfig& cfg);
[[nodiscard]] std::vector<std::string> allowed_sections(Mode mode);

/// Parses INI-style text: `[section]` headers, `key = value` lines, `#` or `;`
/// comments. Unknown sections or keys, duplicates, malformed numbers and
/// out-of-range values raise ConfigError with the offending line.
[[nodiscard]] RunConfig parse_config(std::string_view text, Mode mode);

/// Canonical text with every key of every present section, defaults included.
/// parse_config(to_ini(cfg), cfg.mode) reproduces cfg.
[[nodiscard]] std::string to_ini(const RunConfig& cfg);

// Builders from config sections to library types.
[[nodiscard]] PhysicalConstants make_constants(const RunConfig& cfg);
[[nodiscard]] BeamSimulation make_simulation(const RunConfig& cfg);
[[nodiscard]] SweepSpec make_sweep(const RunConfig& cfg);
[[nodiscard]] LensSimulation make_lens(const RunConfig& cfg);
[[nodiscard]] std::vector<double> imbalance_offsets(const RunConfig& cfg);

/// Shortest text that reads back to the same double.
[[nodiscard]] std::string format_number(double value);

}  // namespace lvis::app
