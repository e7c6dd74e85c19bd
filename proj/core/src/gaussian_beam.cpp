#include "lvis/gaussian_beam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lvis {

void GaussianBeam::validate() const {
    if (std::abs(direction.norm() - 1.0) > 1e-12) throw std::invalid_argument("beam: direction must be a unit vector");
    if (!(waist > 0.0)) throw std::invalid_argument("beam: waist must be positive");
    if (!(saturation >= 0.0) || !std::isfinite(saturation)) throw std::invalid_argument("beam: saturation must be >= 0");
    if (!std::isfinite(detuning) || !std::isfinite(focus) || !axis_point.finite()) {
        throw std::invalid_argument("beam: non-finite parameter");
    }
}

BeamCoordinates beam_coordinates(const GaussianBeam& beam, const Vec3& position) noexcept {
    const Vec3 d = position - beam.axis_point;
    const double z = d.dot(beam.direction);
    return {z, std::max(0.0, d.norm2() - z * z)};
}

double rayleigh_range(const GaussianBeam& beam, double wavelength) noexcept {
    return std::numbers::pi * beam.waist * beam.waist / wavelength;
}

double spot_size(const GaussianBeam& beam, double z, double wavelength) noexcept {
    const double u = (z - beam.focus) / rayleigh_range(beam, wavelength);
    return beam.waist * std::sqrt(1.0 + u * u);
}

BeamSample sample_beam(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept {
    const BeamCoordinates c = beam_coordinates(beam, position);
    const double w = spot_size(beam, c.z, wavelength);
    const double w2 = w * w;
    const double ratio = beam.waist / w;
    return {beam.saturation * ratio * ratio * std::exp(-2.0 * c.r2 / w2), c.r2 <= w2};
}

double local_saturation(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept {
    return sample_beam(beam, position, wavelength).saturation;
}

bool inside_beam(const GaussianBeam& beam, const Vec3& position, double wavelength) noexcept {
    return sample_beam(beam, position, wavelength).inside;
}

}  // namespace lvis
