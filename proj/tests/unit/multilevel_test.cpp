#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include <lvis/multilevel.hpp>

using namespace lvis;

namespace {

const PhysicalConstants kC{};

InternalState ground(Sublevel level, QuantizationAxis axis = QuantizationAxis::x) { return {level, axis}; }

AtomState entering_atom() {
    AtomState s;
    s.position = {0.0, 0.0, -7.4e-3};
    s.velocity = {0.05, -0.03, 14.0};
    return s;
}

}  // namespace

TEST(TransitionWeights, Standard) {
    const auto w = TransitionWeights::standard();
    EXPECT_DOUBLE_EQ(w.excitation[0][0], 1.0 / 3.0);  // sigma+ from m = -1/2
    EXPECT_DOUBLE_EQ(w.excitation[0][1], 1.0);        // sigma+ from m = +1/2 (stretched)
    EXPECT_DOUBLE_EQ(w.excitation[1][0], 1.0);
    EXPECT_DOUBLE_EQ(w.excitation[1][1], 1.0 / 3.0);
    for (const auto& row : w.decay) EXPECT_NEAR(row[0] + row[1], 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(w.decay[1][0], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(w.decay[2][1], 2.0 / 3.0);
    EXPECT_NO_THROW(w.validate());
    EXPECT_NO_THROW(TransitionWeights::unit().validate());
}

TEST(TransitionWeights, ValidationRejectsBadRows) {
    auto w = TransitionWeights::standard();
    w.decay[1] = {0.5, 0.6};
    EXPECT_THROW(w.validate(), std::invalid_argument);
}

TEST(Multilevel, QuantizationAxisForBeam) {
    EXPECT_EQ(quantization_axis_for_beam(0), QuantizationAxis::x);
    EXPECT_EQ(quantization_axis_for_beam(1), QuantizationAxis::x);
    EXPECT_EQ(quantization_axis_for_beam(2), QuantizationAxis::y);
    EXPECT_EQ(quantization_axis_for_beam(3), QuantizationAxis::y);
    EXPECT_THROW((void)quantization_axis_for_beam(4), std::out_of_range);
}

TEST(Multilevel, ReprojectSameAxisIsIdentity) {
    RngStream rng(1, 0);
    const auto s = ground(Sublevel::ground_plus_half);
    EXPECT_EQ(reproject_state(s, QuantizationAxis::x, rng), s);
    EXPECT_EQ(rng.draws(), 0u);
}

TEST(Multilevel, ReprojectOtherAxisIsFair) {
    RngStream rng(1, 1);
    const int n = 100000;
    int plus = 0;
    for (int i = 0; i < n; ++i) {
        const auto r = reproject_state(ground(Sublevel::ground_plus_half), QuantizationAxis::y, rng);
        ASSERT_EQ(r.axis, QuantizationAxis::y);
        plus += r.level == Sublevel::ground_plus_half;
    }
    EXPECT_NEAR(plus / static_cast<double>(n), 0.5, 5.0 * 0.5 / std::sqrt(n));
}

TEST(Multilevel, ReprojectRejectsExcited) {
    RngStream rng(1, 2);
    EXPECT_THROW((void)reproject_state(ground(Sublevel::excited_plus_half), QuantizationAxis::y, rng), std::logic_error);
}

TEST(Multilevel, ExcitationWeights) {
    const auto w = TransitionWeights::standard();
    EXPECT_DOUBLE_EQ(excitation_weight(Polarization::sigma_plus, Sublevel::ground_minus_half, w), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(excitation_weight(Polarization::sigma_minus, Sublevel::ground_minus_half, w), 1.0);
    EXPECT_DOUBLE_EQ(excitation_weight(Polarization::linear, Sublevel::ground_minus_half, w), 2.0 / 3.0);
}

TEST(Multilevel, BeamWeightAveragesAcrossAxes) {
    const auto w = TransitionWeights::standard();
    GaussianBeam y_beam;
    y_beam.direction = {0, 1, 0};
    y_beam.polarization = Polarization::sigma_plus;
    // Atom quantized along x; beam 2 quantizes along y, so the sublevel is unknown.
    EXPECT_DOUBLE_EQ(beam_weight(2, y_beam, ground(Sublevel::ground_plus_half), w), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(beam_weight(2, y_beam, ground(Sublevel::ground_plus_half, QuantizationAxis::y), w), 1.0);
}

TEST(Multilevel, StretchedStateIsClosed) {
    const auto w = TransitionWeights::standard();
    GaussianBeam b;
    b.polarization = Polarization::sigma_plus;
    RngStream rng(2, 0);
    auto s = ground(Sublevel::ground_plus_half);
    for (int i = 0; i < 1000; ++i) {
        s = cycle_internal_state(s, 0, b, rng, w);
        ASSERT_EQ(s.level, Sublevel::ground_plus_half);
    }
}

TEST(Multilevel, SigmaPlusPumpsToStretchedState) {
    const auto w = TransitionWeights::standard();
    GaussianBeam b;
    b.polarization = Polarization::sigma_plus;
    int pumped = 0;
    for (int i = 0; i < 1000; ++i) {
        RngStream rng(3, i);
        auto s = ground(Sublevel::ground_minus_half);
        for (int k = 0; k < 30; ++k) s = cycle_internal_state(s, 0, b, rng, w);
        pumped += s.level == Sublevel::ground_plus_half;
    }
    // Each cycle from m = -1/2 leaves with probability 2/3: (1/3)^30 stays.
    EXPECT_EQ(pumped, 1000);
}

TEST(Multilevel, BranchingRatio) {
    const auto w = TransitionWeights::standard();
    GaussianBeam b;
    b.polarization = Polarization::sigma_plus;
    RngStream rng(4, 0);
    const int n = 90000;
    int to_plus = 0;
    for (int i = 0; i < n; ++i) {
        // sigma+ from -1/2 reaches m' = +1/2, which decays to +1/2 with 2/3.
        to_plus += cycle_internal_state(ground(Sublevel::ground_minus_half), 0, b, rng, w).level ==
                   Sublevel::ground_plus_half;
    }
    EXPECT_NEAR(to_plus / static_cast<double>(n), 2.0 / 3.0, 5.0 * std::sqrt(2.0 / 9.0 / n));
}

TEST(Multilevel, UnitWeightsReproduceTwoLevelBitForBit) {
    const auto m = make_molasses({{}, 7.5e-3, 3.0, -0.5 * kC.linewidth});
    EvolveOptions opt;
    opt.record_stride = 50;
    for (int i = 0; i < 20; ++i) {
        RngStream rng2(9, i), rng6(9, i), internal(9, i, 1);
        const auto two = evolve_in_molasses(entering_atom(), m, kC, rng2, opt);
        const auto six = evolve_in_molasses_six_level(entering_atom(), m, kC, rng6, internal,
                                                      TransitionWeights::unit(), opt);
        ASSERT_EQ(two.events, six.events);
        ASSERT_EQ(two.trajectory.size(), six.trajectory.size());
        for (std::size_t k = 0; k < two.trajectory.size(); ++k) {
            ASSERT_EQ(two.trajectory[k].position, six.trajectory[k].position);
            ASSERT_EQ(two.trajectory[k].velocity, six.trajectory[k].velocity);
            ASSERT_EQ(two.trajectory[k].t, six.trajectory[k].t);
        }
        EXPECT_EQ(two.final_state.position, six.final_state.position);
        EXPECT_EQ(two.final_state.velocity, six.final_state.velocity);
    }
}

TEST(Multilevel, StandardWeightsScatterLess) {
    // The weak sigma transitions reduce the mean scattering rate.
    const auto m = make_molasses({{}, 7.5e-3, 3.0, -0.5 * kC.linewidth});
    std::uint64_t two_events = 0, six_events = 0;
    for (int i = 0; i < 20; ++i) {
        RngStream rng2(10, i), rng6(10, i), internal(10, i, 1);
        two_events += evolve_in_molasses(entering_atom(), m, kC, rng2).events;
        six_events += evolve_in_molasses_six_level(entering_atom(), m, kC, rng6, internal,
                                                   TransitionWeights::standard())
                          .events;
    }
    EXPECT_LT(six_events, two_events);
}
