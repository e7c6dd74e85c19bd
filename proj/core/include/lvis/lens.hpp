#pragma once

#include <span>
#include <vector>

#include "lvis/constants.hpp"
#include "lvis/molasses.hpp"
#include "lvis/transport.hpp"

namespace lvis {

/// Radiation-pressure lens built from counter-propagating beams focused off
/// the atomic-beam axis.
///
/// Each pair runs along x (and y, when `two_dimensional`). The beam travelling
/// toward -x is focused at x = +p and the one toward +x at x = -p, so an atom
/// displaced from the axis sits closer to the focus of the beam that pushes it
/// back. The offset p follows from the waist at the focus and the spot size on
/// the axis: w(0) = w_f sqrt(1 + (p / z_R)^2).
struct LensConfig {
    double focus_waist = 0.5e-6;    // w_f, m
    double center_spot = 5e-3;      // w(0), m
    double saturation = 3.0;        // s0 per beam on the axis at the lens center
    double detuning = 0.0;          // rad/s
    Vec3 center{0.0, 0.0, 0.05};    // lens center on the atomic-beam axis, m
    bool two_dimensional = true;

    void validate() const;
};

/// Distance p of each focus from the axis.
[[nodiscard]] double focus_offset(const LensConfig& cfg, double wavelength);

/// Lens beams in MolassesConfig order (+x, -x[, +y, -y]).
[[nodiscard]] MolassesConfig make_lens_beams(const LensConfig& cfg, double wavelength);

/// gamma_{p,2} / gamma_{p,1} for an atom at rest displaced by `offset` along x
/// from the lens center; beam 1 travels toward +x, beam 2 toward -x. The
/// on-axis net force from the pair is F1 - F2 = -hbar k (gamma_{p,2} - gamma_{p,1}).
/// Throws std::domain_error when |offset| >= p (beyond the foci) or no light reaches the atom.
[[nodiscard]] double scattering_ratio(const LensConfig& cfg, double offset, const PhysicalConstants& constants);

struct ImbalancePoint {
    double offset;  // m
    double ratio;
};

[[nodiscard]] std::vector<ImbalancePoint> imbalance_map(const LensConfig& cfg, std::span<const double> offsets,
                                                        const PhysicalConstants& constants);

struct RadiusSample {
    double z;           // m
    double rms_radius;  // sqrt(<(x - x0)^2 + (y - y0)^2>) about the lens axis, m
};

struct LensResult {
    EnsembleResult ensemble;
    std::vector<RadiusSample> profile;
    bool focused = false;   // interior minimum below the first plane by the detection margin
    double focus_z = 0.0;   // plane of the smallest radius, m
    double min_radius = 0.0;
};

struct LensSimulation {
    BeamSimulation base;        // source, chamber, engine and seeding; `light` is replaced
    LensConfig lens;
    std::vector<double> probe_z;    // downstream planes, ascending, m
    double focus_margin = 0.05;     // relative dip required to call a focus
};

/// RMS radius of straight-line trajectories from `states` at each plane.
[[nodiscard]] std::vector<RadiusSample> radius_profile(std::span<const AtomState> states, const Vec3& axis_point,
                                                       std::span<const double> planes);

[[nodiscard]] LensResult simulate_lens(const LensSimulation& sim);

}  // namespace lvis
