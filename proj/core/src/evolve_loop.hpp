#pragma once

// Shared event loop behind the two-level and six-level engines. The policy
// supplies a per-beam weight on the saturation and an internal-state hook run
// at each absorption; everything touching the kinematic stream lives here so
// both engines consume it identically.

#include <cmath>
#include <vector>

#include "lvis/kinematics.hpp"
#include "lvis/molasses.hpp"
#include "lvis/scattering.hpp"

namespace lvis::detail {

inline constexpr int kBisectionSteps = 60;

/// Time in (0, dt] at which the straight segment first satisfies !inside, given
/// it is inside at 0 and outside at dt.
template <class Inside>
double boundary_time(const AtomState& start, double dt, const Vec3& acceleration, Inside&& inside) {
    double lo = 0.0, hi = dt;
    for (int i = 0; i < kBisectionSteps; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (inside(propagate_free(start, mid, acceleration).position)) lo = mid; else hi = mid;
    }
    return hi;
}

/// Steps an unlit atom until `inside` flips to `want_inside`. Returns false if the
/// observer intercepted it or `max_time` elapsed.
template <class Inside>
bool drift_until(AtomState& s, bool want_inside, double max_time, const EvolveOptions& opt,
                 const SegmentObserver& observer, bool& intercepted, Inside&& inside) {
    intercepted = false;
    double elapsed = 0.0;
    const double speed = s.velocity.norm();
    const double step = speed > 0.0 ? opt.flight_step / speed : max_time;
    while (elapsed < max_time) {
        const double dt = std::min(step, max_time - elapsed);
        if (!(dt > 0.0)) break;
        if (observer && observer(s, dt)) {
            intercepted = true;
            return false;
        }
        const AtomState next = propagate_free(s, dt, opt.acceleration);
        if (inside(next.position) == want_inside) {
            const double t = boundary_time(s, dt, opt.acceleration,
                                           [&](const Vec3& p) { return inside(p) != want_inside; });
            s = propagate_free(s, t, opt.acceleration);
            return true;
        }
        s = next;
        elapsed += dt;
    }
    return false;
}

template <class Policy>
MolassesRun evolve_loop(AtomState s, const MolassesConfig& cfg, const PhysicalConstants& c, RngStream& rng,
                        const EvolveOptions& opt, const SegmentObserver& observer, Policy& policy) {
    MolassesRun run;
    const double lambda = c.wavelength;
    const std::size_t n = cfg.beams.size();
    std::vector<double> sat(n);
    const auto inside = [&](const Vec3& p) { return inside_region(cfg, p, lambda); };

    // Fills `sat` with weighted per-beam saturations; returns their sum.
    const auto evaluate = [&](const AtomState& st, bool& lit_region) {
        double total = 0.0;
        lit_region = false;
        for (std::size_t i = 0; i < n; ++i) {
            const GaussianBeam& beam = cfg.beams[i];
            const BeamSample local = sample_beam(beam, st.position, lambda);
            lit_region = lit_region || local.inside;
            sat[i] = detuned_saturation(local.saturation, beam, st.velocity, c) * policy.weight(i, beam, st.internal);
            total += sat[i];
        }
        return total;
    };

    run.trajectory.push_back(s);
    bool in_region = false;
    while (true) {
        const double total = evaluate(s, in_region);
        if (!in_region) break;
        if (run.events >= opt.step_cap) throw StepCapExceeded(opt.atom_id, run.events);

        const double rate = scattering_rate(total, c);
        if (!(rate > 0.0)) {
            // No light reaches the atom: fly straight out of the region.
            bool intercepted = false;
            const double horizon = static_cast<double>(opt.step_cap) * opt.flight_step;
            if (!drift_until(s, false, horizon, opt, observer, intercepted, inside)) {
                if (intercepted) {
                    run.status = MolassesStatus::intercepted;
                    run.final_state = s;
                    run.trajectory.push_back(s);
                    return run;
                }
                throw StepCapExceeded(opt.atom_id, run.events);
            }
            break;
        }

        const double wait = sample_wait_time(rate, rng);
        if (observer && observer(s, wait)) {
            run.status = MolassesStatus::intercepted;
            run.final_state = s;
            run.trajectory.push_back(s);
            return run;
        }
        AtomState next = propagate_free(s, wait, opt.acceleration);
        const double total_next = evaluate(next, in_region);
        if (!in_region) {
            const double t = boundary_time(s, wait, opt.acceleration, inside);
            s = propagate_free(s, t, opt.acceleration);
            break;
        }
        (void)total_next;

        const std::size_t beam = select_absorption_beam(sat, rng);
        policy.on_absorb(next, beam, cfg.beams[beam]);
        s = apply_scattering_event(next, cfg.beams[beam], rng, c);
        ++run.events;
        if (opt.record_stride != 0 && run.events % opt.record_stride == 0) run.trajectory.push_back(s);
    }
    run.status = MolassesStatus::exited;
    run.final_state = s;
    if (run.trajectory.size() < 2 || !(run.trajectory.back() == s)) run.trajectory.push_back(s);
    return run;
}

}  // namespace lvis::detail
