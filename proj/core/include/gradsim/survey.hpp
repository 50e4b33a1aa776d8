#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gradsim/field.hpp"
#include "gradsim/linalg.hpp"
#include "gradsim/noise.hpp"

namespace gradsim {

/// One stop of a stop-and-measure survey. Elevation is the z coordinate.
struct Waypoint {
  Vec3 position_m = Vec3::Zero();
  double dwell_time_s = 0.0;
};

struct Route {
  std::vector<Waypoint> waypoints;
  double setup_time_s = 0.0;

  void validate() const;
};

/// Which observables a simulated survey records.
enum class SurveyObservables {
  Auto,     ///< whatever the instrument has a density for
  Gravity,  ///< |g| only; requires an acceleration noise density
  Gradient, ///< Gamma_zz only; requires a gradient noise density
  Both,
};

/// One waypoint's record. Gravity entries are absent when the instrument
/// does not measure |g| (resp. Gamma_zz for the gradient entries).
struct Measurement {
  int waypoint_index = 0;
  double timestamp_s = 0.0;
  double elevation_m = 0.0;
  std::optional<double> true_g_mps2;
  std::optional<double> measured_g_mps2;
  std::optional<double> sigma_g_mps2;
  std::optional<double> true_gzz_e;
  std::optional<double> measured_gzz_e;
  std::optional<double> sigma_gzz_e;
};

using MeasurementSeries = std::vector<Measurement>;

/// Forward-models the route and adds white Gaussian measurement noise with
/// sigma = density / sqrt(dwell). Deterministic for a fixed seed; the noise
/// stream is seeded per (seed, waypoint index), so evaluation order does not
/// matter. Throws MissingNoiseDensity when an explicitly requested
/// observable has no instrument density, FieldPointInsideBody when a
/// waypoint is interior.
MeasurementSeries simulate_survey(const Route& route, const DensityModel& model,
                                  const InstrumentSpec& instrument,
                                  std::uint64_t seed,
                                  SurveyObservables observables = SurveyObservables::Auto);

/// Noiseless forward profile along a route, for plotting: elevation, gravity
/// anomaly relative to the first waypoint, and Gamma_zz.
struct ProfilePoint {
  double elevation_m = 0.0;
  double g_anomaly_mps2 = 0.0;
  double gzz_e = 0.0;
};

std::vector<ProfilePoint> anomaly_profile(const Route& route,
                                          const DensityModel& model);

/// Peak-anomaly-versus-standoff detectability sweep. The probe moves away
/// from the model's reference center along `direction` (vertical by
/// default); the noise floor is the instrument's gradient density averaged
/// over the dwell time; the detection range is where SNR crosses the
/// threshold (bisected between sweep samples, clamped to the sweep bounds,
/// zero when the anomaly never reaches the floor).
struct DetectabilitySample {
  double standoff_m = 0.0;
  double anomaly_e = 0.0;
  double snr = 0.0;
};

struct DetectabilityReport {
  double anomaly_peak_e = 0.0;
  double noise_floor_e = 0.0;
  double snr = 0.0;  // at the closest standoff
  double max_detection_range_m = 0.0;
  double snr_threshold = 1.0;
  std::vector<DetectabilitySample> sweep;
};

DetectabilityReport detectability(const DensityModel& model,
                                  const InstrumentSpec& instrument,
                                  double standoff_min_m, double standoff_max_m,
                                  int samples, double dwell_time_s,
                                  double snr_threshold = 1.0,
                                  const Vec3& direction = Vec3(0, 0, 1));

}  // namespace gradsim
