#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gradsim {

/// A published or hypothetical instrument sensitivity entry. At least one of
/// the two noise densities must be present.
struct InstrumentSpec {
  std::string name;
  double baseline_m = 0.0;
  /// Gradient amplitude spectral density, E / sqrt(Hz).
  std::optional<double> gradient_noise_e_rthz;
  /// Per-gravimeter acceleration noise density, g-units / sqrt(Hz).
  std::optional<double> accel_noise_g_rthz;
  /// Citation note for where the figures come from.
  std::string source_note;

  void validate() const;
};

/// White-noise averaging bookkeeping: resolution = density / sqrt(tau).
struct NoiseBudget {
  double gradient_noise_e_rthz = 0.0;
  double averaging_time_s = 0.0;
  double resolution_e = 0.0;
};

NoiseBudget make_noise_budget(double gradient_noise_e_rthz, double averaging_time_s);

/// Resolution after averaging a white noise density for tau seconds:
/// density / sqrt(tau), in E.
double resolution_after_averaging(double density_e_rthz, double tau_s);

/// How the two gravimeter noise contributions combine into the gradiometer
/// figure. SingleSensorEquivalent projects one sensor's noise onto the
/// baseline; IndependentPairRSS adds the uncorrelated pair in quadrature
/// (an extra sqrt(2)).
enum class PairCombination { SingleSensorEquivalent, IndependentPairRSS };

/// Gradiometer noise density, E / sqrt(Hz), from a per-gravimeter
/// acceleration noise density in g-units / sqrt(Hz) over a baseline.
double gradiometer_noise_from_gravimeters(double accel_density_g_rthz,
                                          double baseline_m,
                                          PairCombination combination);

/// Averaging time needed to reach a target resolution:
/// (density / target)^2, in seconds.
double required_averaging_time(double density_e_rthz, double target_resolution_e);

/// Built-in table of published cold-atom gradiometer / gravimeter
/// sensitivities used for cross-checks and survey presets.
const std::vector<InstrumentSpec>& reference_instruments();

}  // namespace gradsim
