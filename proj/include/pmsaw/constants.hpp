#pragma once

namespace pmsaw::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Reduced Planck constant, J s.
inline constexpr double hbar = 1.054571817e-34;

/// Vacuum permeability, N/A^2.
inline constexpr double mu0 = 4.0 * pi * 1e-7;

/// Magnetic flux quantum, Wb (CODATA).
inline constexpr double phi0 = 2.067833848e-15;

}  // namespace pmsaw::constants
