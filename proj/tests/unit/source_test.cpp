#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <lvis/kinematics.hpp>
#include <lvis/source.hpp>

using namespace lvis;

TEST(Source, Validation) {
    SourceConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.hole_diameter = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.speed_fwhm = -1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.mean_speed = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Source, MaxTransverseSpeed) {
    SourceConfig cfg;
    EXPECT_DOUBLE_EQ(max_transverse_speed(cfg), 1.5e-3 / 70e-3 * 14.0);
}

TEST(Source, VerticalBeamSamples) {
    SourceConfig cfg;
    const double vmax = max_transverse_speed(cfg);
    const int n = 100000;
    double vz = 0.0, vz2 = 0.0, r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(1, i);
        const AtomState s = sample_initial_state(cfg, rng);
        const double r = std::hypot(s.position.x, s.position.y);
        ASSERT_LE(r, 0.5 * cfg.hole_diameter + 1e-15);
        ASSERT_DOUBLE_EQ(s.position.z, 0.0);
        ASSERT_LE(std::hypot(s.velocity.x, s.velocity.y), vmax + 1e-12);
        ASSERT_GT(s.velocity.z, 0.0);
        vz += s.velocity.z;
        vz2 += s.velocity.z * s.velocity.z;
        r2 += r * r;
    }
    const double mean = vz / n;
    const double sd = std::sqrt(vz2 / n - mean * mean);
    EXPECT_NEAR(mean, 14.0, 0.02);
    EXPECT_NEAR(sd, fwhm_to_sigma(2.7), 0.02);
    // Uniform disk: <r^2> = R^2 / 2.
    EXPECT_NEAR(r2 / n, 0.5 * std::pow(0.75e-3, 2), 0.01 * 0.5 * std::pow(0.75e-3, 2));
}

TEST(Source, TiltedBeamPointsAlongAxis) {
    SourceConfig cfg;
    cfg.polar_angle = 30.0 * std::numbers::pi / 180.0;
    cfg.azimuthal_angle = 45.0 * std::numbers::pi / 180.0;
    const Vec3 axis = cfg.axis();
    EXPECT_NEAR(axis.x, 0.5 * std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(axis.y, 0.5 * std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(axis.z, std::sqrt(3.0) / 2.0, 1e-15);

    Vec3 mean{};
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        RngStream rng(3, i);
        const AtomState s = sample_initial_state(cfg, rng);
        // Positions lie in the hole plane, perpendicular to the axis.
        ASSERT_NEAR((s.position - cfg.hole_center).dot(axis), 0.0, 1e-15);
        mean += s.velocity.normalized();
    }
    mean = mean * (1.0 / n);
    EXPECT_NEAR(std::acos(mean.normalized().dot(axis)), 0.0, 1e-3);
}

TEST(Source, DeterministicPerStream) {
    SourceConfig cfg;
    RngStream a(9, 17), b(9, 17);
    EXPECT_EQ(sample_initial_state(cfg, a), sample_initial_state(cfg, b));
}
