#include "lvis/lens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lvis/kinematics.hpp"
#include "lvis/scattering.hpp"

namespace lvis {

void LensConfig::validate() const {
    if (!(focus_waist > 0.0)) throw std::invalid_argument("lens: focus waist must be positive");
    if (!(center_spot >= focus_waist)) throw std::invalid_argument("lens: spot size at the center must be >= focus waist");
    if (!(saturation >= 0.0)) throw std::invalid_argument("lens: saturation must be >= 0");
    if (!center.finite() || !std::isfinite(detuning)) throw std::invalid_argument("lens: non-finite parameter");
}

double focus_offset(const LensConfig& cfg, double wavelength) {
    cfg.validate();
    const double z_r = std::numbers::pi * cfg.focus_waist * cfg.focus_waist / wavelength;
    const double ratio = cfg.center_spot / cfg.focus_waist;
    return z_r * std::sqrt(ratio * ratio - 1.0);
}

MolassesConfig make_lens_beams(const LensConfig& cfg, double wavelength) {
    const double p = focus_offset(cfg, wavelength);
    const double peak = cfg.saturation * std::pow(cfg.center_spot / cfg.focus_waist, 2);
    const auto beam = [&](Vec3 dir, Polarization pol) {
        GaussianBeam b;
        b.direction = dir;
        b.axis_point = cfg.center;
        b.waist = cfg.focus_waist;
        b.focus = -p;  // focus on the side the beam comes from
        b.saturation = peak;
        b.detuning = cfg.detuning;
        b.polarization = pol;
        return b;
    };
    MolassesConfig out;
    out.beams = {beam({1, 0, 0}, Polarization::sigma_plus), beam({-1, 0, 0}, Polarization::sigma_minus)};
    if (cfg.two_dimensional) {
        out.beams.push_back(beam({0, 1, 0}, Polarization::sigma_plus));
        out.beams.push_back(beam({0, -1, 0}, Polarization::sigma_minus));
    }
    return out;
}

double scattering_ratio(const LensConfig& cfg, double offset, const PhysicalConstants& c) {
    const double p = focus_offset(cfg, c.wavelength);
    if (!(std::abs(offset) < p)) throw std::domain_error("scattering_ratio: offset lies beyond the lens foci");
    const MolassesConfig beams = make_lens_beams(cfg, c.wavelength);
    AtomState atom;
    atom.position = cfg.center + Vec3{offset, 0.0, 0.0};
    // Both rates share the factor gamma/2 / (1 + sT), so the ratio reduces to the saturations.
    const double s1 = beam_saturation(beams.beams[0], atom, c);
    const double s2 = beam_saturation(beams.beams[1], atom, c);
    if (!(s1 > 0.0) || !(s2 > 0.0)) throw std::domain_error("scattering_ratio: atom is outside both lens beams");
    return s2 / s1;
}

std::vector<ImbalancePoint> imbalance_map(const LensConfig& cfg, std::span<const double> offsets,
                                          const PhysicalConstants& c) {
    std::vector<ImbalancePoint> out;
    out.reserve(offsets.size());
    for (double x : offsets) out.push_back({x, scattering_ratio(cfg, x, c)});
    return out;
}

std::vector<RadiusSample> radius_profile(std::span<const AtomState> states, const Vec3& axis_point,
                                         std::span<const double> planes) {
    std::vector<RadiusSample> out;
    out.reserve(planes.size());
    for (double z : planes) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& s : states) {
            if (!(s.velocity.z > 0.0) || s.position.z > z) continue;
            const AtomState at = propagate_free(s, (z - s.position.z) / s.velocity.z);
            const double dx = at.position.x - axis_point.x, dy = at.position.y - axis_point.y;
            sum += dx * dx + dy * dy;
            ++n;
        }
        out.push_back({z, n ? std::sqrt(sum / static_cast<double>(n)) : 0.0});
    }
    return out;
}

LensResult simulate_lens(const LensSimulation& sim) {
    sim.lens.validate();
    if (sim.probe_z.size() < 3) throw std::invalid_argument("simulate_lens: need at least three probe planes");
    if (!std::is_sorted(sim.probe_z.begin(), sim.probe_z.end())) {
        throw std::invalid_argument("simulate_lens: probe planes must be ascending");
    }

    BeamSimulation run = sim.base;
    run.light = make_lens_beams(sim.lens, run.constants.wavelength);
    run.cavity.reset();

    LensResult result;
    result.ensemble = run_beam_simulation(run);
    const auto exits = result.ensemble.probe_states();
    result.profile = radius_profile(exits, sim.lens.center, sim.probe_z);

    const auto best = std::min_element(result.profile.begin(), result.profile.end(),
                                       [](const RadiusSample& a, const RadiusSample& b) { return a.rms_radius < b.rms_radius; });
    result.focus_z = best->z;
    result.min_radius = best->rms_radius;
    const bool interior = best != result.profile.begin() && best != result.profile.end() - 1;
    result.focused = interior && best->rms_radius < (1.0 - sim.focus_margin) * result.profile.front().rms_radius;
    return result;
}

}  // namespace lvis
