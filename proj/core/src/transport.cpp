#include "lvis/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evolve_loop.hpp"
#include "lvis/kinematics.hpp"
#include "lvis/parallel.hpp"

namespace lvis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sub-step length used when gravity bends the path, s.
constexpr double kCurvedSegment = 1e-5;

struct Interval {
    double lo, hi;
    [[nodiscard]] bool empty() const noexcept { return !(lo <= hi); }
};

Interval intersect(Interval a, Interval b) noexcept { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// Times where a*t^2 + b*t + c <= 0.
Interval quadratic_nonpositive(double a, double b, double c) noexcept {
    if (a <= 0.0) {
        if (b == 0.0) return c <= 0.0 ? Interval{-kInf, kInf} : Interval{1.0, 0.0};
        const double root = -c / b;
        return b > 0.0 ? Interval{-kInf, root} : Interval{root, kInf};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {1.0, 0.0};
    const double sq = std::sqrt(disc);
    // Numerically stable roots.
    const double q = -0.5 * (b + std::copysign(sq, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

// Times where |x0 + v t| <= half.
Interval slab(double x0, double v, double half) noexcept {
    if (v == 0.0) return std::abs(x0) <= half ? Interval{-kInf, kInf} : Interval{1.0, 0.0};
    double t1 = (-half - x0) / v, t2 = (half - x0) / v;
    if (t1 > t2) std::swap(t1, t2);
    return {t1, t2};
}

}  // namespace

void CavityGeometry::validate() const {
    if (!(waist > 0.0)) throw std::invalid_argument("cavity: waist must be positive");
    if (!(gap > 0.0)) throw std::invalid_argument("cavity: mirror gap must be positive");
    if (std::abs(axis.norm() - 1.0) > 1e-12) throw std::invalid_argument("cavity: axis must be a unit vector");
    if (!center.finite()) throw std::invalid_argument("cavity: non-finite center");
}

void ChamberGeometry::validate() const {
    if (!(half_width > 0.0)) throw std::invalid_argument("chamber: half width must be positive");
    if (!(z_max > z_min)) throw std::invalid_argument("chamber: z_max must exceed z_min");
}

bool ChamberGeometry::contains(const Vec3& p) const noexcept {
    return std::abs(p.x) <= half_width && std::abs(p.y) <= half_width && p.z >= z_min && p.z <= z_max;
}

bool check_coupling(const AtomState& state, const CavityGeometry& cavity) noexcept {
    const Vec3 q = state.position - cavity.center;
    const double axial = q.dot(cavity.axis);
    return perpendicular(q, cavity.axis).norm2() <= cavity.waist * cavity.waist && std::abs(axial) <= 0.5 * cavity.gap;
}

std::optional<double> first_coupling_time(const AtomState& start, double dt, const CavityGeometry& cavity) noexcept {
    const Vec3 q = start.position - cavity.center;
    const Vec3 qp = perpendicular(q, cavity.axis);
    const Vec3 vp = perpendicular(start.velocity, cavity.axis);
    const Interval radial =
        quadratic_nonpositive(vp.norm2(), 2.0 * qp.dot(vp), qp.norm2() - cavity.waist * cavity.waist);
    const Interval axial = slab(q.dot(cavity.axis), start.velocity.dot(cavity.axis), 0.5 * cavity.gap);
    const Interval hit = intersect(intersect(radial, axial), {0.0, dt});
    if (hit.empty()) return std::nullopt;
    return hit.lo;
}

double time_to_wall(const AtomState& s, const ChamberGeometry& chamber) noexcept {
    if (!chamber.contains(s.position)) return 0.0;
    const auto exit_time = [](double p, double v, double lo, double hi) {
        if (v > 0.0) return (hi - p) / v;
        if (v < 0.0) return (lo - p) / v;
        return kInf;
    };
    const double w = chamber.half_width;
    return std::min({exit_time(s.position.x, s.velocity.x, -w, w), exit_time(s.position.y, s.velocity.y, -w, w),
                     exit_time(s.position.z, s.velocity.z, chamber.z_min, chamber.z_max)});
}

const char* to_string(Outcome outcome) noexcept {
    switch (outcome) {
        case Outcome::coupled: return "coupled";
        case Outcome::wall: return "wall";
        case Outcome::step_cap: return "step_cap";
    }
    return "unknown";
}

const char* to_string(Engine engine) noexcept {
    return engine == Engine::six_level ? "six-level" : "two-level";
}

void BeamSimulation::validate() const {
    source.validate();
    if (light) light->validate();
    if (cavity) cavity->validate();
    chamber.validate();
    constants.validate();
    weights.validate();
    if (atoms == 0) throw std::invalid_argument("simulation: at least one atom is required");
    if (!chamber.contains(source.hole_center)) throw std::invalid_argument("simulation: source lies outside the chamber");
    if (cavity && !chamber.contains(cavity->center)) {
        throw std::invalid_argument("simulation: cavity lies outside the chamber");
    }
}

std::vector<AtomState> EnsembleResult::probe_states() const {
    std::vector<AtomState> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(a.probe);
    return out;
}

AtomRecord simulate_atom(const BeamSimulation& sim, std::uint64_t id, std::vector<AtomState>* trajectory) {
    RngStream rng(sim.seed, sim.stream_offset + id, 0);
    RngStream internal_rng = rng.with_lane(1);

    AtomRecord rec;
    rec.id = id;
    AtomState s = sample_initial_state(sim.source, rng);
    if (sim.engine == Engine::six_level) s.internal = sample_ground_state(internal_rng);
    rec.launch = s;
    rec.probe = s;
    if (trajectory) trajectory->push_back(s);

    const Vec3& accel = sim.evolve.acceleration;
    std::optional<AtomState> coupled_at;
    const auto test_segment = [&](const AtomState& start, double dt) {
        if (!sim.cavity) return false;
        if (accel == Vec3{}) {
            if (auto t = first_coupling_time(start, dt, *sim.cavity)) {
                coupled_at = propagate_free(start, *t);
                return true;
            }
            return false;
        }
        AtomState p = start;
        for (double done = 0.0; done < dt;) {
            const double step = std::min(kCurvedSegment, dt - done);
            AtomState chord = p;
            const AtomState end = propagate_free(p, step, accel);
            chord.velocity = (end.position - p.position) * (1.0 / step);
            if (auto t = first_coupling_time(chord, step, *sim.cavity)) {
                coupled_at = propagate_free(p, *t, accel);
                return true;
            }
            p = end;
            done += step;
        }
        return false;
    };
    const SegmentObserver observer = test_segment;

    const auto finish = [&](Outcome outcome, const AtomState& final_state) {
        rec.outcome = outcome;
        rec.final_state = final_state;
        if (trajectory) trajectory->push_back(final_state);
        return rec;
    };

    if (sim.light) {
        EvolveOptions opt = sim.evolve;
        opt.atom_id = id;
        bool intercepted = false;
        const double horizon = std::max(time_to_wall(s, sim.chamber), 0.0) * (accel == Vec3{} ? 1.0 : 4.0);
        const auto entry = fly_to_region(s, *sim.light, sim.constants.wavelength, horizon, opt, observer, &intercepted);
        if (intercepted) return finish(Outcome::coupled, *coupled_at);
        if (entry) {
            rec.entered_light = true;
            MolassesRun run;
            try {
                if (sim.engine == Engine::six_level) {
                    run = evolve_in_molasses_six_level(*entry, *sim.light, sim.constants, rng, internal_rng,
                                                       sim.weights, opt, observer);
                } else {
                    run = evolve_in_molasses(*entry, *sim.light, sim.constants, rng, opt, observer);
                }
            } catch (const StepCapExceeded&) {
                if (sim.strict) throw;
                rec.events = opt.step_cap;
                return finish(Outcome::step_cap, *entry);
            }
            rec.events = run.events;
            if (trajectory) trajectory->insert(trajectory->end(), run.trajectory.begin(), run.trajectory.end());
            if (run.status == MolassesStatus::intercepted) return finish(Outcome::coupled, *coupled_at);
            s = run.final_state;
        }
    }

    // Probe plane: light exit plus an optional extra drift along z.
    AtomState probe = s;
    if (sim.probe_offset > 0.0 && s.velocity.z > 0.0) probe = propagate_free(s, sim.probe_offset / s.velocity.z, accel);
    rec.probe = probe;

    // Ballistic flight to the wall, watching for the mode.
    if (accel == Vec3{}) {
        const double t_wall = time_to_wall(s, sim.chamber);
        if (test_segment(s, t_wall)) return finish(Outcome::coupled, *coupled_at);
        return finish(Outcome::wall, propagate_free(s, t_wall));
    }
    constexpr double kStep = 1e-4;
    const auto inside = [&](const Vec3& p) { return sim.chamber.contains(p); };
    for (int i = 0; i < 1'000'000 && inside(s.position); ++i) {
        const AtomState next = propagate_free(s, kStep, accel);
        const double dt = inside(next.position) ? kStep : detail::boundary_time(s, kStep, accel, inside);
        if (test_segment(s, dt)) return finish(Outcome::coupled, *coupled_at);
        s = dt == kStep ? next : propagate_free(s, dt, accel);
        if (dt < kStep) break;
    }
    return finish(Outcome::wall, s);
}

EnsembleResult run_beam_simulation(const BeamSimulation& sim) {
    sim.validate();
    EnsembleResult result;
    result.atoms.resize(sim.atoms);
    if (sim.keep_trajectories) result.trajectories.resize(sim.atoms);

    parallel_for(sim.atoms, sim.threads, [&](std::size_t i) {
        result.atoms[i] = simulate_atom(sim, i, sim.keep_trajectories ? &result.trajectories[i] : nullptr);
    });

    for (const auto& a : result.atoms) {
        switch (a.outcome) {
            case Outcome::coupled: ++result.coupled; break;
            case Outcome::wall: ++result.wall; break;
            case Outcome::step_cap: ++result.step_capped; break;
        }
    }
    const std::size_t denominator = sim.exclude_step_cap ? sim.atoms - result.step_capped : sim.atoms;
    if (denominator > 0) {
        const double n = static_cast<double>(denominator);
        result.coupling_fraction = static_cast<double>(result.coupled) / n;
        result.coupling_stderr = std::sqrt(result.coupling_fraction * (1.0 - result.coupling_fraction) / n);
    }
    return result;
}

}  // namespace lvis
