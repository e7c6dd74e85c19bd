#include "lvis/scattering.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lvis/kinematics.hpp"

namespace lvis {

double beam_saturation(const GaussianBeam& beam, const AtomState& state, const PhysicalConstants& c) noexcept {
    return detuned_saturation(local_saturation(beam, state.position, c.wavelength), beam, state.velocity, c);
}

double scattering_rate(double total_saturation, const PhysicalConstants& c) noexcept {
    return 0.5 * c.linewidth * total_saturation / (1.0 + total_saturation);
}

double total_scattering_rate(std::span<const GaussianBeam> beams, const AtomState& state,
                             const PhysicalConstants& c) noexcept {
    double total = 0.0;
    for (const auto& beam : beams) total += beam_saturation(beam, state, c);
    return scattering_rate(total, c);
}

double partial_scattering_rate(double s, double total, const PhysicalConstants& c) noexcept {
    return 0.5 * c.linewidth * s / (1.0 + total);
}

double sample_wait_time(double rate, RngStream& rng) {
    if (!(rate > 0.0)) throw std::domain_error("sample_wait_time: rate must be positive");
    return -std::log(rng.uniform_positive()) / rate;
}

std::size_t select_absorption_beam(std::span<const double> weights, RngStream& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::domain_error("select_absorption_beam: no light at the atom (outside molasses)");

    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_lit = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        cumulative += weights[i];
        last_lit = i;
        if (target < cumulative) return i;
    }
    return last_lit;  // target rounded up to the total
}

std::size_t select_absorption_beam(std::span<const GaussianBeam> beams, const AtomState& state,
                                   const PhysicalConstants& c, RngStream& rng) {
    std::vector<double> rates(beams.size());
    double total = 0.0;
    for (std::size_t i = 0; i < beams.size(); ++i) total += rates[i] = beam_saturation(beams[i], state, c);
    for (double& r : rates) r = partial_scattering_rate(r, total, c);
    return select_absorption_beam(rates, rng);
}

AtomState apply_scattering_event(const AtomState& state, const GaussianBeam& beam, RngStream& rng,
                                 const PhysicalConstants& c) noexcept {
    const double vr = recoil_speed(c);
    AtomState next = state;
    next.velocity += beam.direction * vr;
    next.velocity += sample_unit_sphere(rng) * vr;
    return next;
}

}  // namespace lvis
