#include "lvis/multilevel.hpp"

#include <cmath>
#include <stdexcept>

#include "evolve_loop.hpp"
#include "lvis/scattering.hpp"

namespace lvis {

namespace {

constexpr std::size_t ground_index(Sublevel g) noexcept { return g == Sublevel::ground_plus_half ? 1 : 0; }
constexpr Sublevel ground_level(std::size_t i) noexcept {
    return i == 1 ? Sublevel::ground_plus_half : Sublevel::ground_minus_half;
}

// Excited index 0..3 for m' = -3/2 .. +3/2.
constexpr std::size_t excited_index(Sublevel e) noexcept { return static_cast<std::size_t>(e) - 2; }
constexpr Sublevel excited_level(std::size_t i) noexcept { return static_cast<Sublevel>(i + 2); }

// Twice the magnetic quantum number.
constexpr int ground_two_m(std::size_t g) noexcept { return g == 1 ? 1 : -1; }
constexpr std::size_t excited_from_two_m(int two_m) noexcept { return static_cast<std::size_t>((two_m + 3) / 2); }

struct SixLevelPolicy {
    const TransitionWeights& weights;
    RngStream& internal_rng;

    double weight(std::size_t i, const GaussianBeam& beam, const InternalState& internal) const {
        return beam_weight(i, beam, internal, weights);
    }
    void on_absorb(AtomState& s, std::size_t i, const GaussianBeam& beam) {
        s.internal = cycle_internal_state(s.internal, i, beam, internal_rng, weights);
    }
};

}  // namespace

TransitionWeights TransitionWeights::standard() noexcept {
    TransitionWeights w;
    // sigma+: m=-1/2 -> m'=+1/2 (1/3), m=+1/2 -> m'=+3/2 (1)
    w.excitation[0] = {1.0 / 3.0, 1.0};
    // sigma-: m=-1/2 -> m'=-3/2 (1), m=+1/2 -> m'=-1/2 (1/3)
    w.excitation[1] = {1.0, 1.0 / 3.0};
    w.decay[0] = {1.0, 0.0};
    w.decay[1] = {2.0 / 3.0, 1.0 / 3.0};
    w.decay[2] = {1.0 / 3.0, 2.0 / 3.0};
    w.decay[3] = {0.0, 1.0};
    return w;
}

TransitionWeights TransitionWeights::unit() noexcept {
    TransitionWeights w;
    w.excitation[0] = {1.0, 1.0};
    w.excitation[1] = {1.0, 1.0};
    w.decay[0] = {1.0, 0.0};
    w.decay[1] = {0.5, 0.5};
    w.decay[2] = {0.5, 0.5};
    w.decay[3] = {0.0, 1.0};
    return w;
}

void TransitionWeights::validate() const {
    for (const auto& row : decay) {
        if (row[0] < 0.0 || row[1] < 0.0 || std::abs(row[0] + row[1] - 1.0) > 1e-12) {
            throw std::invalid_argument("transition weights: decay branching ratios must sum to 1");
        }
    }
    for (const auto& row : excitation) {
        if (!(row[0] > 0.0) || !(row[1] > 0.0)) {
            throw std::invalid_argument("transition weights: excitation weights must be positive");
        }
    }
}

QuantizationAxis quantization_axis_for_beam(std::size_t beam_index) {
    if (beam_index > 3) throw std::out_of_range("quantization_axis_for_beam: beam index must be 0..3");
    return beam_index < 2 ? QuantizationAxis::x : QuantizationAxis::y;
}

InternalState reproject_state(const InternalState& state, QuantizationAxis axis, RngStream& rng) {
    if (!is_ground(state.level)) throw std::logic_error("reproject_state: atom is not in a ground sublevel");
    if (state.axis == axis) return state;
    return {rng.uniform() < 0.5 ? Sublevel::ground_minus_half : Sublevel::ground_plus_half, axis};
}

InternalState sample_ground_state(RngStream& rng) noexcept {
    return {rng.uniform() < 0.5 ? Sublevel::ground_minus_half : Sublevel::ground_plus_half, QuantizationAxis::x};
}

double excitation_weight(Polarization polarization, Sublevel ground, const TransitionWeights& w) {
    if (!is_ground(ground)) throw std::logic_error("excitation_weight: atom is not in a ground sublevel");
    const std::size_t g = ground_index(ground);
    switch (polarization) {
        case Polarization::sigma_plus: return w.excitation[0][g];
        case Polarization::sigma_minus: return w.excitation[1][g];
        case Polarization::linear: return 0.5 * (w.excitation[0][g] + w.excitation[1][g]);
    }
    return 0.0;
}

double beam_weight(std::size_t beam_index, const GaussianBeam& beam, const InternalState& internal,
                   const TransitionWeights& w) {
    if (quantization_axis_for_beam(beam_index) == internal.axis) {
        return excitation_weight(beam.polarization, internal.level, w);
    }
    return 0.5 * (excitation_weight(beam.polarization, Sublevel::ground_minus_half, w) +
                  excitation_weight(beam.polarization, Sublevel::ground_plus_half, w));
}

double weighted_saturation(std::size_t beam_index, const GaussianBeam& beam, const AtomState& state,
                           const PhysicalConstants& c, const TransitionWeights& w) {
    return beam_saturation(beam, state, c) * beam_weight(beam_index, beam, state.internal, w);
}

double weighted_scattering_rate(std::span<const GaussianBeam> beams, const AtomState& state,
                                const PhysicalConstants& c, const TransitionWeights& w) {
    double total = 0.0;
    for (std::size_t i = 0; i < beams.size(); ++i) total += weighted_saturation(i, beams[i], state, c, w);
    return scattering_rate(total, c);
}

InternalState cycle_internal_state(const InternalState& state, std::size_t beam_index, const GaussianBeam& beam,
                                   RngStream& rng, const TransitionWeights& w) {
    InternalState s = reproject_state(state, quantization_axis_for_beam(beam_index), rng);
    const std::size_t g = ground_index(s.level);

    int q = 0;
    switch (beam.polarization) {
        case Polarization::sigma_plus: q = +1; break;
        case Polarization::sigma_minus: q = -1; break;
        case Polarization::linear: {
            const double up = w.excitation[0][g];
            q = rng.uniform() * (up + w.excitation[1][g]) < up ? +1 : -1;
            break;
        }
    }
    const std::size_t e = excited_from_two_m(ground_two_m(g) + 2 * q);
    s.level = excited_level(e);

    const auto& branch = w.decay[excited_index(s.level)];
    s.level = ground_level(rng.uniform() * (branch[0] + branch[1]) < branch[0] ? 0 : 1);
    return s;
}

AtomState apply_multilevel_event(const AtomState& state, std::size_t beam_index, const GaussianBeam& beam,
                                 RngStream& rng, RngStream& internal_rng, const PhysicalConstants& c,
                                 const TransitionWeights& w) {
    AtomState next = state;
    next.internal = cycle_internal_state(state.internal, beam_index, beam, internal_rng, w);
    return apply_scattering_event(next, beam, rng, c);
}

MolassesRun evolve_in_molasses_six_level(const AtomState& state, const MolassesConfig& cfg,
                                         const PhysicalConstants& constants, RngStream& rng, RngStream& internal_rng,
                                         const TransitionWeights& weights, const EvolveOptions& options,
                                         const SegmentObserver& observer) {
    SixLevelPolicy policy{weights, internal_rng};
    return detail::evolve_loop(state, cfg, constants, rng, options, observer, policy);
}

}  // namespace lvis
