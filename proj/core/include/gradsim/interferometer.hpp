#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gradsim/constants.hpp"
#include "gradsim/field.hpp"
#include "gradsim/linalg.hpp"

namespace gradsim {

/// Parameters of one Mach-Zehnder atom interferometer in the magic-pulse
/// idealization: the first pulse splits the cloud at the launch point with
/// velocity kicks (v_x, +/- v_z), the second redirects, the third recombines
/// after 2 T. The loop lies in the XOZ plane through the launch point.
struct InterferometerConfig {
  double atom_mass_kg = 0.0;
  Vec3 launch_point_m = Vec3::Zero();
  double v_x_mps = 0.0;
  double v_z_mps = 0.0;  // signed; the kicked arm is deflected by +v_z
  double pulse_interval_s = 0.0;

  /// Throws std::invalid_argument unless M > 0, T > 0, V_x > 0, |V_z| > 0.
  /// V_x = 0 would make the enclosed loop degenerate.
  void validate() const;

  /// Effective wave vector k_eff = 2 M |V_z| / hbar, rad m^-1.
  double effective_wave_vector() const {
    return 2.0 * atom_mass_kg * std::abs(v_z_mps) / PhysicalConstants::hbar;
  }

  /// Enclosed parallelogram area, 2 V_x |V_z| T^2, m^2.
  double enclosed_area() const {
    return 2.0 * v_x_mps * std::abs(v_z_mps) * pulse_interval_s * pulse_interval_s;
  }

  /// Convenience constructor that solves V_z for a target effective wave
  /// vector: V_z = k_eff hbar / (2 M).
  static InterferometerConfig from_effective_wave_vector(
      double atom_mass_kg, const Vec3& launch_point_m, double v_x_mps,
      double k_eff_rad_per_m, double pulse_interval_s);
};

/// Ballistic vertical trajectory z(t) = z0 + V_z t - 1/2 g t^2. Provided as
/// a diagnostic for how far real free-fall paths sag away from the straight
/// magic-pulse arms; the phase computation itself uses the parallelogram.
struct Trajectory {
  double z0_m = 0.0;
  double v_z_mps = 0.0;
  double g_mps2 = 0.0;

  double position(double t_s) const {
    return z0_m + v_z_mps * t_s - 0.5 * g_mps2 * t_s * t_s;
  }
};

/// Maximum deviation between a ballistic arc and the straight chord over one
/// pulse interval: g T^2 / 8.
double ballistic_sag(const InterferometerConfig& config, double g_mps2);

/// Closed parallelogram ACDB: the kicked arm travels A -> C -> D, the mirror
/// arm A -> B -> D, both at constant speed, meeting again at D after 2 T.
/// C is the geometrically upper vertex; for v_z < 0 the kicked arm runs
/// through B instead and the loop orientation (and the path-integral phase)
/// flips sign.
struct LoopGeometry {
  Vec3 a = Vec3::Zero();
  Vec3 c = Vec3::Zero();  // A + (V_x T, 0, +|V_z| T)
  Vec3 d = Vec3::Zero();  // A + (2 V_x T, 0, 0)
  Vec3 b = Vec3::Zero();  // A + (V_x T, 0, -|V_z| T)
  double v_x_mps = 0.0;
  double v_z_mps = 0.0;  // signed kick of the first arm
  double pulse_interval_s = 0.0;

  /// Position of the kicked arm at t in [0, 2T].
  Vec3 first_arm_position(double t_s) const;
  /// Position of the mirror arm at t in [0, 2T].
  Vec3 second_arm_position(double t_s) const;
  /// Upper geometric arm A -> C -> D (independent of kick sign).
  Vec3 upper_arm_position(double t_s) const;
  /// Lower geometric arm A -> B -> D.
  Vec3 lower_arm_position(double t_s) const;

  /// Parallelogram area from the vertices (shoelace in the XOZ plane).
  double enclosed_area() const;
};

LoopGeometry build_loop(const InterferometerConfig& config);

enum class PhaseMethod { ClosedForm, PathIntegral };

struct PhaseResult {
  double delta_phi_rad = 0.0;
  PhaseMethod method = PhaseMethod::ClosedForm;
  /// Absolute quadrature error estimate; zero for the closed form.
  double quadrature_error_estimate_rad = 0.0;
};

/// delta_phi = g k_eff T^2: the closed-form phase of a uniform field of
/// strength g. Positive g (downward attraction) gives a positive phase.
PhaseResult phase_closed_form(const InterferometerConfig& config, double g_mps2);

/// Per-unit-mass gravitational potential evaluated at a position.
using PotentialFn = std::function<double(const Vec3&)>;

/// Phase by numerical action integration: (M / hbar) times the time integral
/// of the per-unit-mass potential difference between the kicked arm and the
/// mirror arm. Sign convention: with an upward kick (v_z > 0) in a uniform
/// downward field of strength g this equals +g k_eff T^2, matching
/// phase_closed_form; flipping the kick sign flips the loop orientation and
/// the phase sign.
///
/// Integration is adaptive Gauss-Kronrod per straight-arm segment with an
/// absolute tolerance in rad. When no tolerance is given it defaults to
/// 1e-12 * |phase estimate| + 1e-15 rad. Throws QuadratureNotConverged when
/// the tolerance is unreachable; errors from the potential callable (e.g.
/// FieldPointInsideBody when an arm crosses a body) propagate unchanged.
PhaseResult phase_path_integral(const InterferometerConfig& config,
                                const PotentialFn& potential_per_unit_mass,
                                std::optional<double> tolerance_rad = {});

/// Same phase against a DensityModel, using the model's cancellation-free
/// potential difference between the two arms. Prefer this overload for mass
/// models: with the callable form a planetary-scale potential drowns the
/// inter-arm difference in rounding noise and the quadrature cannot reach
/// its tolerance.
PhaseResult phase_path_integral(const InterferometerConfig& config,
                                const DensityModel& model,
                                std::optional<double> tolerance_rad = {});

/// Two identical interferometers separated vertically by a baseline.
struct GradiometerConfig {
  InterferometerConfig lower;
  InterferometerConfig upper;  // same as lower with launch z offset +baseline
  double baseline_m = 0.0;

  GradiometerConfig(const InterferometerConfig& lower_config, double baseline_m);

  /// Intrinsic scale factor Gamma_0 = 1 / (k_eff T^2 baseline), s^-2 rad^-1.
  /// The smaller it is, the more sensitive the gradiometer.
  double scale_factor() const;
};

/// Free-function form of GradiometerConfig::scale_factor, s^-2 rad^-1.
double scale_factor(const GradiometerConfig& gradiometer);

/// Minimum detectable gradient Gamma_0 * phase_noise_rms, in Eotvos.
double min_detectable_gradient(const GradiometerConfig& gradiometer,
                               double phase_noise_rms_rad);

/// Raw integrated phase difference upper minus lower against an arbitrary
/// potential. For slowly varying fields this equals the local vertical
/// change of field strength across the baseline times k_eff T^2; converting
/// it to a gradient via the scale factor is the caller's step, and the sign
/// follows the potential's curvature (d^2 phi / dz^2 = -Gamma_zz for a mass
/// model, so a source below the pair yields a negative difference).
double gradiometer_phase_difference(const GradiometerConfig& gradiometer,
                                    const PotentialFn& potential_per_unit_mass,
                                    std::optional<double> tolerance_rad = {});

/// Same against a DensityModel's potential.
double gradiometer_phase_difference(const GradiometerConfig& gradiometer,
                                    const DensityModel& model,
                                    std::optional<double> tolerance_rad = {});

/// Closed-form phase with the interferometer plane rotated about the
/// horizontal: the effective field strength is g sin(angle), so the scan is
/// an exact sinusoid in the rotation angle.
std::vector<PhaseResult> cow_rotation_scan(const InterferometerConfig& config,
                                           double g_mps2,
                                           std::span<const double> angles_rad);

}  // namespace gradsim
