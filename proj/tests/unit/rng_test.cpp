#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <lvis/rng.hpp>

using lvis::RngStream;
using Block = std::array<std::uint32_t, 4>;

TEST(Philox, ZeroCounterAndKey) {
    EXPECT_EQ(lvis::philox4x32_10({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, AllOnes) {
    const std::uint32_t f = 0xffffffff;
    EXPECT_EQ(lvis::philox4x32_10({f, f, f, f}, {f, f}), (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, PiDigits) {
    EXPECT_EQ(lvis::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, SameAddressSameSequence) {
    RngStream a(7, 42), b(7, 42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
    EXPECT_EQ(a.draws(), 100u);
}

TEST(RngStream, DistinctStreamsLanesAndSeedsDiffer) {
    RngStream base(7, 42), other_stream(7, 43), other_lane(7, 42, 1), other_seed(8, 42);
    const auto first = base();
    EXPECT_NE(first, other_stream());
    EXPECT_NE(first, other_lane());
    EXPECT_NE(first, other_seed());
}

TEST(RngStream, WithLaneKeepsAddress) {
    const RngStream a(3, 9);
    const RngStream b = a.with_lane(1);
    EXPECT_EQ(b.seed(), 3u);
    EXPECT_EQ(b.stream(), 9u);
    EXPECT_EQ(b.lane(), 1u);
    RngStream c(3, 9, 1), d = b;
    EXPECT_EQ(c(), d());
}

TEST(RngStream, UniformRanges) {
    RngStream rng(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double p = rng.uniform_positive();
        ASSERT_GT(p, 0.0);
        ASSERT_LE(p, 1.0);
        sum += u;
    }
    // Mean of U(0,1) has standard error 1/sqrt(12 n).
    EXPECT_NEAR(sum / n, 0.5, 5.0 / std::sqrt(12.0 * n));
}

TEST(RngStream, NoShortCycles) {
    RngStream rng(11, 5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) seen.insert(rng());
    EXPECT_EQ(seen.size(), 10000u);
}

TEST(RngStream, WorksWithStandardDistributions) {
    RngStream rng(2, 2);
    std::normal_distribution<double> normal(0.0, 1.0);
    double sum2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = normal(rng);
        sum2 += x * x;
    }
    EXPECT_NEAR(sum2 / n, 1.0, 0.03);
}
