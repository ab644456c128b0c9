#pragma once

#include <numbers>

namespace mmconv {

// CODATA exact values, SI.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angular frequency (rad/s) from an ordinary frequency in Hz.
inline constexpr double angular(double hz) { return kTwoPi * hz; }
/// Ordinary frequency (Hz) from an angular frequency in rad/s.
inline constexpr double hertz(double rad_per_s) { return rad_per_s / kTwoPi; }

}  // namespace mmconv
