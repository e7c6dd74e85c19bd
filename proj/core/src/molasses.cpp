#include "lvis/molasses.hpp"

#include <cmath>

#include "evolve_loop.hpp"

namespace lvis {

namespace {

struct TwoLevelPolicy {
    double weight(std::size_t, const GaussianBeam&, const InternalState&) const noexcept { return 1.0; }
    void on_absorb(AtomState&, std::size_t, const GaussianBeam&) const noexcept {}
};

}  // namespace

void MolassesConfig::validate() const {
    if (beams.empty() || beams.size() % 2 != 0) {
        throw std::invalid_argument("molasses: beams must come in counter-propagating pairs");
    }
    for (const auto& beam : beams) beam.validate();
    for (std::size_t i = 0; i < beams.size(); i += 2) {
        const Vec3 sum = beams[i].direction + beams[i + 1].direction;
        if (sum.norm() > 1e-12) {
            throw std::invalid_argument("molasses: beams " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                        " are not anti-parallel");
        }
    }
}

MolassesConfig make_molasses(const MolassesParams& p) {
    const auto beam = [&](Vec3 dir, Polarization pol) {
        GaussianBeam b;
        b.direction = dir;
        b.axis_point = p.center;
        b.waist = p.waist;
        b.focus = 0.0;
        b.saturation = p.saturation;
        b.detuning = p.detuning;
        b.polarization = pol;
        return b;
    };
    MolassesConfig cfg;
    cfg.beams = {beam({1, 0, 0}, Polarization::sigma_plus), beam({-1, 0, 0}, Polarization::sigma_minus),
                 beam({0, 1, 0}, Polarization::sigma_plus), beam({0, -1, 0}, Polarization::sigma_minus)};
    return cfg;
}

bool inside_region(const MolassesConfig& cfg, const Vec3& position, double wavelength) noexcept {
    for (const auto& beam : cfg.beams) {
        if (inside_beam(beam, position, wavelength)) return true;
    }
    return false;
}

MolassesRun evolve_in_molasses(const AtomState& state, const MolassesConfig& cfg, const PhysicalConstants& constants,
                               RngStream& rng, const EvolveOptions& options, const SegmentObserver& observer) {
    TwoLevelPolicy policy;
    return detail::evolve_loop(state, cfg, constants, rng, options, observer, policy);
}

std::optional<AtomState> fly_to_region(const AtomState& state, const MolassesConfig& cfg, double wavelength,
                                       double max_time, const EvolveOptions& options, const SegmentObserver& observer,
                                       bool* intercepted) {
    AtomState s = state;
    const auto inside = [&](const Vec3& p) { return inside_region(cfg, p, wavelength); };
    if (intercepted) *intercepted = false;
    if (inside(s.position)) return s;
    bool hit = false;
    const bool entered = detail::drift_until(s, true, max_time, options, observer, hit, inside);
    if (intercepted) *intercepted = hit;
    if (!entered) return std::nullopt;
    return s;
}

}  // namespace lvis
