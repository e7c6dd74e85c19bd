#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <lvis/gaussian_beam.hpp>

using namespace lvis;

namespace {
constexpr double kLambda = 780.241e-9;

GaussianBeam beam(double waist, double s0) {
    GaussianBeam b;
    b.waist = waist;
    b.saturation = s0;
    return b;
}
}  // namespace

TEST(GaussianBeam, RayleighRange) {
    const auto b = beam(7.5e-3, 3.0);
    EXPECT_NEAR(rayleigh_range(b, kLambda), std::numbers::pi * 7.5e-3 * 7.5e-3 / kLambda, 1e-9);
    EXPECT_NEAR(rayleigh_range(beam(0.5e-6, 1.0), kLambda), 1.00659e-6, 1e-10);
}

TEST(GaussianBeam, SpotSize) {
    auto b = beam(1e-4, 1.0);
    const double zr = rayleigh_range(b, kLambda);
    EXPECT_DOUBLE_EQ(spot_size(b, 0.0, kLambda), 1e-4);
    EXPECT_NEAR(spot_size(b, zr, kLambda), std::sqrt(2.0) * 1e-4, 1e-16);
    EXPECT_NEAR(spot_size(b, -zr, kLambda), std::sqrt(2.0) * 1e-4, 1e-16);
    b.focus = 0.01;
    EXPECT_DOUBLE_EQ(spot_size(b, 0.01, kLambda), 1e-4);
}

TEST(GaussianBeam, SaturationProfile) {
    const auto b = beam(7.5e-3, 3.0);
    EXPECT_DOUBLE_EQ(local_saturation(b, {0.0, 0.0, 0.0}, kLambda), 3.0);
    EXPECT_NEAR(local_saturation(b, {0.0, 7.5e-3, 0.0}, kLambda), 3.0 * std::exp(-2.0), 1e-12);
    EXPECT_NEAR(local_saturation(b, {0.0, 0.0, 7.5e-3}, kLambda), 3.0 * std::exp(-2.0), 1e-12);
    // The axial coordinate does not enter the radius.
    EXPECT_NEAR(local_saturation(b, {0.05, 3e-3, 0.0}, kLambda), local_saturation(b, {-0.05, 3e-3, 0.0}, kLambda),
                1e-12);
}

TEST(GaussianBeam, PowerIsConservedAlongAxis) {
    // s0 (w0/w)^2 on axis: peak drops as the beam spreads.
    auto b = beam(1e-5, 2.0);
    const double zr = rayleigh_range(b, kLambda);
    EXPECT_NEAR(local_saturation(b, {zr, 0.0, 0.0}, kLambda), 1.0, 1e-12);
}

TEST(GaussianBeam, InsideBoundary) {
    const auto b = beam(1e-3, 1.0);
    EXPECT_TRUE(inside_beam(b, {0.0, 0.999e-3, 0.0}, kLambda));
    EXPECT_FALSE(inside_beam(b, {0.0, 1.001e-3, 0.0}, kLambda));
    const auto coords = beam_coordinates(b, {0.2, 3e-4, 4e-4});
    EXPECT_DOUBLE_EQ(coords.z, 0.2);
    EXPECT_NEAR(coords.r2, 25e-8, 1e-18);
}

TEST(GaussianBeam, Validation) {
    auto b = beam(1e-3, 1.0);
    EXPECT_NO_THROW(b.validate());
    b.direction = {1.0, 1.0, 0.0};
    EXPECT_THROW(b.validate(), std::invalid_argument);
    b = beam(0.0, 1.0);
    EXPECT_THROW(b.validate(), std::invalid_argument);
    b = beam(1e-3, -1.0);
    EXPECT_THROW(b.validate(), std::invalid_argument);
}
