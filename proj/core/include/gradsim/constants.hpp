#pragma once

namespace gradsim {

/// Physical constants used throughout the toolkit. All values are CODATA 2018.
/// Immutable by construction; everything is constexpr.
struct PhysicalConstants {
  /// Newtonian gravitational constant, m^3 kg^-1 s^-2.
  static constexpr double gravitational_constant = 6.67430e-11;
  /// Reduced Planck constant, J s.
  static constexpr double hbar = 1.054571817e-34;
  /// One Eotvos in SI: 1 E = 1e-9 s^-2.
  static constexpr double eotvos = 1.0e-9;
  /// Standard gravity g0, m s^-2. Used for g-unit noise densities.
  static constexpr double standard_gravity = 9.80665;
};

constexpr double to_eotvos(double per_s2) { return per_s2 / PhysicalConstants::eotvos; }
constexpr double from_eotvos(double e) { return e * PhysicalConstants::eotvos; }

}  // namespace gradsim
