#include "lvis/source.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lvis/kinematics.hpp"

namespace lvis {

namespace {

struct SourceFrame {
    Vec3 e1, e2, axis;
};

SourceFrame source_frame(double theta, double phi) noexcept {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    return {{ct * cp, ct * sp, -st}, {-sp, cp, 0.0}, {st * cp, st * sp, ct}};
}

Vec3 sample_disk(double radius, RngStream& rng) noexcept {
    const double r = radius * std::sqrt(rng.uniform());
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(a), r * std::sin(a), 0.0};
}

}  // namespace

void SourceConfig::validate() const {
    if (!(hole_diameter > 0.0)) throw std::invalid_argument("source: hole diameter must be positive");
    if (!(mot_to_hole > hole_diameter)) throw std::invalid_argument("source: MOT-to-hole distance must exceed the hole diameter");
    if (!(mean_speed > 0.0)) throw std::invalid_argument("source: mean speed must be positive");
    if (!(speed_fwhm > 0.0)) throw std::invalid_argument("source: speed FWHM must be positive");
    if (!(polar_angle >= 0.0 && polar_angle < std::numbers::pi / 2)) {
        throw std::invalid_argument("source: polar angle must lie in [0, 90) degrees");
    }
    if (!hole_center.finite() || !std::isfinite(azimuthal_angle)) throw std::invalid_argument("source: non-finite geometry");
}

Vec3 SourceConfig::axis() const noexcept { return source_frame(polar_angle, azimuthal_angle).axis; }

double max_transverse_speed(const SourceConfig& cfg) noexcept {
    return cfg.hole_diameter / cfg.mot_to_hole * cfg.mean_speed;
}

AtomState sample_initial_state(const SourceConfig& cfg, RngStream& rng) {
    const Vec3 offset = sample_disk(0.5 * cfg.hole_diameter, rng);
    const Vec3 transverse = sample_disk(max_transverse_speed(cfg), rng);

    std::normal_distribution<double> longitudinal(cfg.mean_speed, fwhm_to_sigma(cfg.speed_fwhm));
    double vz = longitudinal(rng);
    while (vz <= 0.0) vz = longitudinal(rng);

    const SourceFrame f = source_frame(cfg.polar_angle, cfg.azimuthal_angle);
    AtomState s;
    s.position = cfg.hole_center + f.e1 * offset.x + f.e2 * offset.y;
    s.velocity = f.e1 * transverse.x + f.e2 * transverse.y + f.axis * vz;
    return s;
}

}  // namespace lvis
