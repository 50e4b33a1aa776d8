#include "gradsim/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "gradsim/constants.hpp"
#include "gradsim/errors.hpp"

namespace gradsim {

void InstrumentSpec::validate() const {
  if (name.empty()) {
    throw std::invalid_argument("instrument: name must not be empty");
  }
  if (!(baseline_m > 0.0)) {
    throw std::invalid_argument("instrument: baseline_m must be > 0");
  }
  if (!gradient_noise_e_rthz && !accel_noise_g_rthz) {
    throw std::invalid_argument(
        "instrument: at least one noise density (gradient or acceleration) is required");
  }
  if (gradient_noise_e_rthz && !(*gradient_noise_e_rthz >= 0.0)) {
    throw std::invalid_argument("instrument: gradient_noise_E_rtHz must be >= 0");
  }
  if (accel_noise_g_rthz && !(*accel_noise_g_rthz >= 0.0)) {
    throw std::invalid_argument("instrument: accel_noise_g_rtHz must be >= 0");
  }
}

NoiseBudget make_noise_budget(double gradient_noise_e_rthz, double averaging_time_s) {
  return NoiseBudget{
      gradient_noise_e_rthz, averaging_time_s,
      resolution_after_averaging(gradient_noise_e_rthz, averaging_time_s)};
}

double resolution_after_averaging(double density_e_rthz, double tau_s) {
  if (!(density_e_rthz >= 0.0)) {
    throw std::invalid_argument("resolution_after_averaging: density must be >= 0");
  }
  if (!(tau_s > 0.0)) {
    throw std::invalid_argument("resolution_after_averaging: tau must be > 0");
  }
  return density_e_rthz / std::sqrt(tau_s);
}

double gradiometer_noise_from_gravimeters(double accel_density_g_rthz,
                                          double baseline_m,
                                          PairCombination combination) {
  if (!(accel_density_g_rthz >= 0.0)) {
    throw std::invalid_argument(
        "gradiometer_noise_from_gravimeters: density must be >= 0");
  }
  if (!(baseline_m > 0.0)) {
    throw std::invalid_argument(
        "gradiometer_noise_from_gravimeters: baseline must be > 0");
  }
  const double single = to_eotvos(
      accel_density_g_rthz * PhysicalConstants::standard_gravity / baseline_m);
  return combination == PairCombination::IndependentPairRSS
             ? single * std::sqrt(2.0)
             : single;
}

double required_averaging_time(double density_e_rthz, double target_resolution_e) {
  if (!(density_e_rthz > 0.0)) {
    throw std::invalid_argument("required_averaging_time: density must be > 0");
  }
  if (!(target_resolution_e > 0.0)) {
    throw std::invalid_argument("required_averaging_time: target must be > 0");
  }
  const double ratio = density_e_rthz / target_resolution_e;
  return ratio * ratio;
}

const std::vector<InstrumentSpec>& reference_instruments() {
  static const std::vector<InstrumentSpec> table = {
      {"Perrin 2019 double-loop",
       0.02,
       65000.0,
       std::nullopt,
       "Perrin et al. 2019: doubled-loop single-atom interferometer, "
       "insensitive to dc acceleration and constant rotation rate; "
       "significantly reduced sensitivity due to the interferometer's short "
       "base-line; a short-term sensitivity of 65,000 E/sqrt(Hz) was "
       "obtained during two days of measurements"},
      {"HUST big-G gradiometer",
       0.3,
       100.0,
       std::nullopt,
       "Huazhong University of Science and Technology: cold atom gravity "
       "gradiometer demonstrating the sensitivity of ~100 E/sqrt(Hz), with "
       "0.3 metres interferometers' separation base-line; designed for "
       "laboratory use (a big-G measurement)"},
      {"Kasevich group gradiometer",
       1.0,
       35.0,
       std::nullopt,
       "Kasevich's group (Biedermann 2015, Sorrentino 2014): first best "
       "results, ~30-40 E/sqrt(Hz) at ~1 metre interferometers' separation "
       "base-line; stored as the 35 E/sqrt(Hz) nominal midpoint of the "
       "30-40 range"},
      {"UAV gravimeter pair",
       1.0,
       std::nullopt,
       37e-9,
       "flight-capable gradiometer: two atomic gravimeters separated by a "
       "1 metre vertical base-line on a UAV payload; small-g sensitivity of "
       "37e-9 g/sqrt(Hz) per interferometer, a doubled-interferometer "
       "gradiometer noise limit estimate of 360 E/sqrt(Hz)"},
      {"Birmingham cartography gradiometer",
       1.0,
       470.0,
       std::nullopt,
       "University of Birmingham gravitational cartography instrument: a 20 "
       "Eotvos resolution over 10 min averaging time and a vertical baseline "
       "of 1 m; short-term noise level about 470 E/sqrt(Hz)"},
  };
  return table;
}

}  // namespace gradsim
