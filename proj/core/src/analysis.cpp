#include "lvis/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lvis {

PolarAngle mean_polar_angle(std::span<const AtomState> states, const Vec3& reference) {
    if (states.empty()) throw std::domain_error("mean_polar_angle: empty ensemble");
    double sum = 0.0, sum2 = 0.0;
    for (const auto& s : states) {
        const double speed = s.velocity.norm();
        const double c = speed > 0.0 ? std::clamp(s.velocity.dot(reference) / speed, -1.0, 1.0) : 1.0;
        const double angle = std::acos(c);
        sum += angle;
        sum2 += angle * angle;
    }
    const double n = static_cast<double>(states.size());
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n)};
}

TransverseTemperature transverse_temperature(std::span<const AtomState> states, const PhysicalConstants& c) {
    if (states.empty()) throw std::domain_error("transverse_temperature: empty ensemble");
    double sum = 0.0;
    for (const auto& s : states) sum += s.velocity.x * s.velocity.x + s.velocity.y * s.velocity.y;
    const double mean_square = sum / static_cast<double>(states.size());
    return {std::sqrt(mean_square), c.mass * mean_square / (2.0 * c.boltzmann)};
}

double doppler_limit(int pairs, const PhysicalConstants& c) {
    if (pairs < 1 || pairs > 3) throw std::domain_error("doppler_limit: number of beam pairs must be 1, 2 or 3");
    return c.hbar * c.linewidth * (3.0 + pairs) / (12.0 * c.boltzmann);
}

std::vector<AtomState> probe_ensemble(const EnsembleResult& result) {
    std::vector<AtomState> out;
    out.reserve(result.atoms.size());
    for (const auto& a : result.atoms) {
        if (a.outcome != Outcome::step_cap) out.push_back(a.probe);
    }
    return out;
}

BeamStats beam_stats(const EnsembleResult& result, const PhysicalConstants& c) {
    BeamStats stats;
    const auto ensemble = probe_ensemble(result);
    stats.atoms = result.atoms.size();
    stats.coupled = result.coupled;
    stats.coupling_fraction = result.coupling_fraction;
    stats.coupling_stderr = result.coupling_stderr;
    if (!ensemble.empty()) {
        stats.polar = mean_polar_angle(ensemble);
        stats.transverse = transverse_temperature(ensemble, c);
    }
    return stats;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "detuning") return SweepParameter::detuning;
    if (name == "s0" || name == "saturation") return SweepParameter::saturation;
    if (name == "waist") return SweepParameter::waist;
    if (name == "z_cav" || name == "cavity_z") return SweepParameter::cavity_z;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "'");
}

const char* to_string(SweepParameter p) noexcept {
    switch (p) {
        case SweepParameter::detuning: return "detuning";
        case SweepParameter::saturation: return "s0";
        case SweepParameter::waist: return "waist";
        case SweepParameter::cavity_z: return "z_cav";
    }
    return "unknown";
}

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep: grid is empty");
    if (atoms_per_point == 0) throw std::invalid_argument("sweep: at least one atom per point is required");
    const bool needs_light = parameter != SweepParameter::cavity_z;
    if (needs_light && !base.light) throw std::invalid_argument("sweep: parameter requires a light field");
    if (parameter == SweepParameter::cavity_z && !base.cavity) throw std::invalid_argument("sweep: z_cav requires a cavity");
}

BeamSimulation sweep_point(const SweepSpec& spec, double value) {
    BeamSimulation sim = spec.base;
    sim.atoms = spec.atoms_per_point;
    switch (spec.parameter) {
        case SweepParameter::detuning:
            for (auto& beam : sim.light->beams) beam.detuning = value * sim.constants.linewidth;
            break;
        case SweepParameter::saturation:
            for (auto& beam : sim.light->beams) beam.saturation = value;
            break;
        case SweepParameter::waist:
            for (auto& beam : sim.light->beams) beam.waist = value;
            break;
        case SweepParameter::cavity_z:
            sim.cavity->center.z = value;
            break;
    }
    // Disjoint 2^32-atom blocks keyed by the grid value.
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    std::uint64_t h = bits * 0x9E3779B97F4A7C15ull;
    h ^= h >> 29;
    sim.stream_offset = spec.base.stream_offset + ((h & 0xFFFFFFFFull) << 32);
    return sim;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());
    for (double value : spec.values) {
        const BeamSimulation sim = sweep_point(spec, value);
        const EnsembleResult result = run_beam_simulation(sim);
        rows.push_back({value, beam_stats(result, sim.constants)});
    }
    return rows;
}

std::vector<SweepRow> detuning_sweep(const SweepSpec& spec) {
    if (spec.parameter != SweepParameter::detuning) throw std::invalid_argument("detuning_sweep: parameter must be detuning");
    return run_sweep(spec);
}

}  // namespace lvis
