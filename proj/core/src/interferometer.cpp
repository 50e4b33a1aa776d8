#include "gradsim/interferometer.hpp"

#include <cmath>
#include <stdexcept>

#include "gradsim/errors.hpp"
#include "gradsim/quadrature.hpp"

namespace gradsim {

namespace {

// Piecewise-linear arm through vertex `via` at time T, ending at `end` at 2T.
Vec3 arm_position(const Vec3& start, const Vec3& via, const Vec3& end,
                  double pulse_interval, double t) {
  if (t <= pulse_interval) {
    const double u = t / pulse_interval;
    return start + u * (via - start);
  }
  const double u = (t - pulse_interval) / pulse_interval;
  return via + u * (end - via);
}

}  // namespace

void InterferometerConfig::validate() const {
  if (!(atom_mass_kg > 0.0)) {
    throw std::invalid_argument("interferometer: atom_mass_kg must be > 0");
  }
  if (!(pulse_interval_s > 0.0)) {
    throw std::invalid_argument("interferometer: pulse_interval_s must be > 0");
  }
  if (!(v_x_mps > 0.0)) {
    throw std::invalid_argument(
        "interferometer: v_x_mps must be > 0 (zero enclosed area)");
  }
  if (!(std::abs(v_z_mps) > 0.0)) {
    throw std::invalid_argument("interferometer: v_z_mps must be nonzero");
  }
}

InterferometerConfig InterferometerConfig::from_effective_wave_vector(
    double atom_mass_kg, const Vec3& launch_point_m, double v_x_mps,
    double k_eff_rad_per_m, double pulse_interval_s) {
  if (!(k_eff_rad_per_m > 0.0)) {
    throw std::invalid_argument("interferometer: effective wave vector must be > 0");
  }
  InterferometerConfig config;
  config.atom_mass_kg = atom_mass_kg;
  config.launch_point_m = launch_point_m;
  config.v_x_mps = v_x_mps;
  config.v_z_mps = k_eff_rad_per_m * PhysicalConstants::hbar / (2.0 * atom_mass_kg);
  config.pulse_interval_s = pulse_interval_s;
  config.validate();
  return config;
}

double ballistic_sag(const InterferometerConfig& config, double g_mps2) {
  config.validate();
  return std::abs(g_mps2) * config.pulse_interval_s * config.pulse_interval_s / 8.0;
}

LoopGeometry build_loop(const InterferometerConfig& config) {
  config.validate();
  const double T = config.pulse_interval_s;
  const double vx = config.v_x_mps;
  const double vz_abs = std::abs(config.v_z_mps);

  LoopGeometry loop;
  loop.a = config.launch_point_m;
  loop.c = loop.a + Vec3(vx * T, 0.0, vz_abs * T);
  loop.b = loop.a + Vec3(vx * T, 0.0, -vz_abs * T);
  loop.d = loop.a + Vec3(2.0 * vx * T, 0.0, 0.0);
  loop.v_x_mps = vx;
  loop.v_z_mps = config.v_z_mps;
  loop.pulse_interval_s = T;
  return loop;
}

Vec3 LoopGeometry::upper_arm_position(double t_s) const {
  return arm_position(a, c, d, pulse_interval_s, t_s);
}

Vec3 LoopGeometry::lower_arm_position(double t_s) const {
  return arm_position(a, b, d, pulse_interval_s, t_s);
}

Vec3 LoopGeometry::first_arm_position(double t_s) const {
  return v_z_mps > 0.0 ? upper_arm_position(t_s) : lower_arm_position(t_s);
}

Vec3 LoopGeometry::second_arm_position(double t_s) const {
  return v_z_mps > 0.0 ? lower_arm_position(t_s) : upper_arm_position(t_s);
}

double LoopGeometry::enclosed_area() const {
  // Shoelace over A, C, D, B in the XOZ plane.
  const Vec3 vertices[4] = {a, c, d, b};
  double twice_area = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = vertices[i];
    const Vec3& q = vertices[(i + 1) % 4];
    twice_area += p.x() * q.z() - q.x() * p.z();
  }
  return 0.5 * std::abs(twice_area);
}

PhaseResult phase_closed_form(const InterferometerConfig& config, double g_mps2) {
  config.validate();
  if (!std::isfinite(g_mps2)) {
    throw std::invalid_argument("phase_closed_form: g must be finite");
  }
  const double T = config.pulse_interval_s;
  const double delta_phi = g_mps2 * config.effective_wave_vector() * T * T;
  return PhaseResult{delta_phi, PhaseMethod::ClosedForm, 0.0};
}

namespace {

// Shared quadrature driver: integrates the inter-arm potential difference
// over both legs of the loop.
PhaseResult integrate_arm_difference(
    const InterferometerConfig& config,
    const std::function<double(double)>& arm_difference,
    std::optional<double> tolerance_rad) {
  if (tolerance_rad && !(*tolerance_rad > 0.0)) {
    throw std::invalid_argument("phase_path_integral: tolerance must be > 0");
  }
  const double T = config.pulse_interval_s;
  const double phase_per_potential_time =
      config.atom_mass_kg / PhysicalConstants::hbar;

  double abs_tolerance;
  if (tolerance_rad) {
    abs_tolerance = *tolerance_rad;
  } else {
    // One non-adaptive panel per segment gives the magnitude estimate the
    // default tolerance is anchored to.
    const QuadratureResult first = gauss_kronrod_panel(arm_difference, 0.0, T);
    const QuadratureResult second = gauss_kronrod_panel(arm_difference, T, 2.0 * T);
    const double estimate =
        std::abs(phase_per_potential_time * (first.value + second.value));
    abs_tolerance = 1e-12 * estimate + 1e-15;
  }

  // The arms are straight segments with a kink at t = T; integrate each leg
  // separately with half the tolerance budget.
  const double segment_tolerance =
      0.5 * abs_tolerance / phase_per_potential_time;
  const QuadratureResult leg1 =
      integrate_adaptive(arm_difference, 0.0, T, segment_tolerance);
  const QuadratureResult leg2 =
      integrate_adaptive(arm_difference, T, 2.0 * T, segment_tolerance);

  PhaseResult result;
  result.delta_phi_rad = phase_per_potential_time * (leg1.value + leg2.value);
  result.method = PhaseMethod::PathIntegral;
  result.quadrature_error_estimate_rad =
      phase_per_potential_time * (leg1.error_estimate + leg2.error_estimate);
  return result;
}

}  // namespace

PhaseResult phase_path_integral(const InterferometerConfig& config,
                                const PotentialFn& potential_per_unit_mass,
                                std::optional<double> tolerance_rad) {
  config.validate();
  if (!potential_per_unit_mass) {
    throw std::invalid_argument("phase_path_integral: potential callable is empty");
  }
  const LoopGeometry loop = build_loop(config);
  // Constant offsets cancel per evaluation rather than between the two
  // accumulated arm integrals.
  const auto arm_difference = [&](double t) {
    return potential_per_unit_mass(loop.first_arm_position(t)) -
           potential_per_unit_mass(loop.second_arm_position(t));
  };
  return integrate_arm_difference(config, arm_difference, tolerance_rad);
}

PhaseResult phase_path_integral(const InterferometerConfig& config,
                                const DensityModel& model,
                                std::optional<double> tolerance_rad) {
  config.validate();
  const LoopGeometry loop = build_loop(config);
  const auto arm_difference = [&](double t) {
    return potential_difference(model, loop.first_arm_position(t),
                                loop.second_arm_position(t));
  };
  return integrate_arm_difference(config, arm_difference, tolerance_rad);
}

GradiometerConfig::GradiometerConfig(const InterferometerConfig& lower_config,
                                     double baseline)
    : lower(lower_config), upper(lower_config), baseline_m(baseline) {
  lower.validate();
  if (!(baseline > 0.0)) {
    throw std::invalid_argument("gradiometer: baseline_m must be > 0");
  }
  upper.launch_point_m.z() += baseline;
}

double GradiometerConfig::scale_factor() const {
  const double T = lower.pulse_interval_s;
  return 1.0 / (lower.effective_wave_vector() * T * T * baseline_m);
}

double scale_factor(const GradiometerConfig& gradiometer) {
  return gradiometer.scale_factor();
}

double min_detectable_gradient(const GradiometerConfig& gradiometer,
                               double phase_noise_rms_rad) {
  if (!(phase_noise_rms_rad >= 0.0)) {
    throw std::invalid_argument("min_detectable_gradient: phase noise must be >= 0");
  }
  return to_eotvos(gradiometer.scale_factor() * phase_noise_rms_rad);
}

double gradiometer_phase_difference(const GradiometerConfig& gradiometer,
                                    const PotentialFn& potential_per_unit_mass,
                                    std::optional<double> tolerance_rad) {
  const PhaseResult upper =
      phase_path_integral(gradiometer.upper, potential_per_unit_mass, tolerance_rad);
  const PhaseResult lower =
      phase_path_integral(gradiometer.lower, potential_per_unit_mass, tolerance_rad);
  return upper.delta_phi_rad - lower.delta_phi_rad;
}

double gradiometer_phase_difference(const GradiometerConfig& gradiometer,
                                    const DensityModel& model,
                                    std::optional<double> tolerance_rad) {
  const PhaseResult upper =
      phase_path_integral(gradiometer.upper, model, tolerance_rad);
  const PhaseResult lower =
      phase_path_integral(gradiometer.lower, model, tolerance_rad);
  return upper.delta_phi_rad - lower.delta_phi_rad;
}

std::vector<PhaseResult> cow_rotation_scan(const InterferometerConfig& config,
                                           double g_mps2,
                                           std::span<const double> angles_rad) {
  config.validate();
  std::vector<PhaseResult> results;
  results.reserve(angles_rad.size());
  for (double angle : angles_rad) {
    if (!std::isfinite(angle)) {
      throw std::invalid_argument("cow_rotation_scan: angles must be finite");
    }
    results.push_back(phase_closed_form(config, g_mps2 * std::sin(angle)));
  }
  return results;
}

}  // namespace gradsim
