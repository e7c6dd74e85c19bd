#include "lvis/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lvis {

void PhysicalConstants::validate() const {
    const auto check = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string("physical constant '") + name + "' must be positive and finite");
        }
    };
    check(wavelength, "wavelength");
    check(linewidth, "linewidth");
    check(mass, "mass");
    check(hbar, "hbar");
    check(boltzmann, "boltzmann");
}

double fwhm_to_sigma(double fwhm) {
    if (!(fwhm > 0.0)) throw std::domain_error("fwhm_to_sigma: FWHM must be positive");
    return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

double recoil_speed(const PhysicalConstants& c) noexcept { return c.hbar * c.wavenumber() / c.mass; }

Vec3 sample_unit_sphere(RngStream& rng) noexcept {
    const double cos_theta = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

AtomState propagate_free(const AtomState& state, double dt, const Vec3& acceleration) noexcept {
    AtomState next = state;
    next.position += state.velocity * dt;
    if (acceleration != Vec3{}) {
        next.position += acceleration * (0.5 * dt * dt);
        next.velocity += acceleration * dt;
    }
    next.t += dt;
    return next;
}

}  // namespace lvis
