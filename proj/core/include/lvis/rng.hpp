#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lvis {

/// One application of the Philox-4x32-10 bijection (Salmon et al., SC'11).
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                                         std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// A stream is addressed by (seed, stream, lane). The seed is the Philox key;
/// stream and lane occupy the upper counter words, so every addressed stream
/// is a disjoint slice of one keyed sequence. Simulations give each atom its
/// own stream id, which makes results independent of thread scheduling.
/// Lane 0 is used for kinematics; other lanes carry auxiliary draws (e.g.
/// internal-state sampling) without perturbing lane 0.
///
/// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t lane = 0) noexcept
        : seed_{seed}, stream_{stream}, lane_{lane} {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double on (0, 1].
    double uniform_positive() noexcept { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }
    [[nodiscard]] std::uint32_t lane() const noexcept { return lane_; }

    /// Number of 64-bit words drawn so far.
    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

    /// Sibling stream with the same (seed, stream) and a different lane.
    [[nodiscard]] RngStream with_lane(std::uint32_t lane) const noexcept { return {seed_, stream_, lane}; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint32_t lane_;
    std::uint32_t block_ = 0;
    std::uint64_t draws_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

}  // namespace lvis
