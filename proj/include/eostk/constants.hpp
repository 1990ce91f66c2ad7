#pragma once

#include <numbers>

// Unit system used throughout: time in fs, length in m, fields in V/m,
// angular frequency in rad/fs. SI constants are converted once, here, so
// that every formula downstream is written exactly as in the continuum
// theory with no stray powers of ten.
namespace eostk::constants {

inline constexpr double pi = std::numbers::pi;

// speed of light, m/fs
inline constexpr double c0 = 2.99792458e-7;

// vacuum permittivity, C/(V m)  (no time unit involved)
inline constexpr double eps0 = 8.8541878128e-12;

// reduced Planck constant, V C fs  (1.054571817e-34 J s * 1e15 fs/s)
inline constexpr double hbar = 1.054571817e-19;

// 1 THz of ordinary frequency expressed as angular frequency in rad/fs
inline constexpr double thz = 2.0 * pi * 1.0e-3;

inline constexpr double um = 1.0e-6;        // m
inline constexpr double pm_per_v = 1.0e-12; // m/V

} // namespace eostk::constants
