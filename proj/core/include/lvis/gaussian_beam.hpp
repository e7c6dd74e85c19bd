#pragma once

#include <cstdint>

#include "lvis/vec3.hpp"

namespace lvis {

enum class Polarization : std::uint8_t { sigma_plus, sigma_minus, linear };

/// A TEM00 laser beam.
///
/// `saturation` is the on-resonance saturation parameter s0 on axis at the
/// waist. `focus` is the waist location along the axis, measured from
/// `axis_point` in the direction of propagation.
struct GaussianBeam {
    Vec3 direction{1.0, 0.0, 0.0};  // unit k-hat
    Vec3 axis_point{};              // m
    double waist = 1e-3;            // w0, m
    double focus = 0.0;             // m
    double saturation = 0.0;        // s0
    double detuning = 0.0;          // delta, rad/s
    Polarization polarization = Polarization::sigma_plus;

    /// Throws std::invalid_argument when |k-hat| != 1, w0 <= 0 or s0 < 0.
    void validate() const;
};

/// Longitudinal and radial coordinates of a point in the beam's frame.
struct BeamCoordinates {
    double z;   // along k-hat, relative to axis_point
    double r2;  // squared distance from the axis
};

[[nodiscard]] BeamCoordinates beam_coordinates(const GaussianBeam& beam, const Vec3& position) noexcept;

/// z_R = pi w0^2 / lambda
[[nodiscard]] double rayleigh_range(const GaussianBeam& beam, double wavelength) noexcept;

/// w(z) = w0 sqrt(1 + ((z - z_focus) / z_R)^2)
[[nodiscard]] double spot_size(const GaussianBeam& beam, double z, double wavelength) noexcept;

/// Local saturation and 1/e^2 membership from one coordinate evaluation.
struct BeamSample {
    double saturation;
    bool inside;
};

[[nodiscard]] BeamSample sample_beam(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept;

/// Position-dependent saturation s0 (w0/w)^2 exp(-2 r^2 / w^2).
[[nodiscard]] double local_saturation(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept;

/// True inside the beam's 1/e^2 intensity radius.
[[nodiscard]] bool inside_beam(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept;

}  // namespace lvis
