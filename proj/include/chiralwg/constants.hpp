#pragma once

namespace chiralwg::constants {

// CODATA 2018 exact/recommended values.
inline constexpr double phi0 = 2.067833848e-15;       // magnetic flux quantum h/2e [Wb]
inline constexpr double hbar = 1.054571817e-34;       // reduced Planck constant [J s]
inline constexpr double e_charge = 1.602176634e-19;   // elementary charge [C]
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace chiralwg::constants
