#pragma once

#include <numbers>

namespace lvis {

namespace si {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
}  // namespace si

/// Atomic and optical constants for the cooling transition.
///
/// Defaults describe the Rb-85 D2 line (780.241 nm, natural linewidth
/// 2pi x 6.0666 MHz, mass 84.9118 u). Every field may be overridden from a
/// run configuration.
struct PhysicalConstants {
    double wavelength = 780.241e-9;                          // m
    double linewidth = 2.0 * std::numbers::pi * 6.0666e6;    // gamma, rad/s
    double mass = 84.9118 * si::atomic_mass_unit;            // kg
    double hbar = si::hbar;                                  // J s
    double boltzmann = si::boltzmann;                        // J/K

    /// k = 2 pi / lambda
    [[nodiscard]] constexpr double wavenumber() const noexcept { return 2.0 * std::numbers::pi / wavelength; }

    /// Throws std::invalid_argument if any constant is non-positive or non-finite.
    void validate() const;
};

/// Rb-85 D2 defaults.
[[nodiscard]] inline PhysicalConstants rubidium85_d2() { return PhysicalConstants{}; }

}  // namespace lvis
