#include "gradsim/survey.hpp"

#include <cmath>
#include <stdexcept>

#include "gradsim/constants.hpp"
#include "gradsim/errors.hpp"
#include "gradsim/rng.hpp"

namespace gradsim {

namespace {

double noisy(double truth, double sigma, SplitMix64& rng) {
  // sigma == 0 must reproduce the truth bit-exactly.
  if (sigma == 0.0) return truth;
  return truth + sigma * rng.standard_normal();
}

double gzz_eotvos(const DensityModel& model, const Vec3& point) {
  return to_eotvos(gradient_tensor(model, point).components(2, 2));
}

}  // namespace

void Route::validate() const {
  if (waypoints.empty()) {
    throw std::invalid_argument("route: needs at least one waypoint");
  }
  for (const Waypoint& wp : waypoints) {
    if (!(wp.dwell_time_s > 0.0)) {
      throw std::invalid_argument("route: dwell_s must be > 0 at every waypoint");
    }
  }
  if (!(setup_time_s >= 0.0)) {
    throw std::invalid_argument("route: setup_time_s must be >= 0");
  }
}

MeasurementSeries simulate_survey(const Route& route, const DensityModel& model,
                                  const InstrumentSpec& instrument,
                                  std::uint64_t seed,
                                  SurveyObservables observables) {
  route.validate();
  instrument.validate();

  bool want_gravity = false;
  bool want_gradient = false;
  switch (observables) {
    case SurveyObservables::Auto:
      want_gravity = instrument.accel_noise_g_rthz.has_value();
      want_gradient = instrument.gradient_noise_e_rthz.has_value();
      break;
    case SurveyObservables::Gravity:
      want_gravity = true;
      break;
    case SurveyObservables::Gradient:
      want_gradient = true;
      break;
    case SurveyObservables::Both:
      want_gravity = true;
      want_gradient = true;
      break;
  }
  if (want_gravity && !instrument.accel_noise_g_rthz) {
    throw MissingNoiseDensity("instrument '" + instrument.name +
                              "' has no acceleration noise density for the "
                              "gravity observable");
  }
  if (want_gradient && !instrument.gradient_noise_e_rthz) {
    throw MissingNoiseDensity("instrument '" + instrument.name +
                              "' has no gradient noise density for the "
                              "gradient observable");
  }

  MeasurementSeries series;
  series.reserve(route.waypoints.size());
  double clock_s = 0.0;
  for (std::size_t i = 0; i < route.waypoints.size(); ++i) {
    const Waypoint& wp = route.waypoints[i];
    clock_s += route.setup_time_s + wp.dwell_time_s;

    SplitMix64 rng(substream_seed(seed, i));
    Measurement m;
    m.waypoint_index = static_cast<int>(i);
    m.timestamp_s = clock_s;
    m.elevation_m = wp.position_m.z();
    const double inv_sqrt_dwell = 1.0 / std::sqrt(wp.dwell_time_s);

    if (want_gravity) {
      const double truth = acceleration(model, wp.position_m).norm();
      const double sigma = *instrument.accel_noise_g_rthz *
                           PhysicalConstants::standard_gravity * inv_sqrt_dwell;
      m.true_g_mps2 = truth;
      m.sigma_g_mps2 = sigma;
      m.measured_g_mps2 = noisy(truth, sigma, rng);
    }
    if (want_gradient) {
      const double truth = gzz_eotvos(model, wp.position_m);
      const double sigma = *instrument.gradient_noise_e_rthz * inv_sqrt_dwell;
      m.true_gzz_e = truth;
      m.sigma_gzz_e = sigma;
      m.measured_gzz_e = noisy(truth, sigma, rng);
    }
    series.push_back(m);
  }
  return series;
}

std::vector<ProfilePoint> anomaly_profile(const Route& route,
                                          const DensityModel& model) {
  route.validate();
  std::vector<ProfilePoint> profile;
  profile.reserve(route.waypoints.size());
  double g_reference = 0.0;
  for (std::size_t i = 0; i < route.waypoints.size(); ++i) {
    const Vec3& p = route.waypoints[i].position_m;
    const double g = acceleration(model, p).norm();
    if (i == 0) g_reference = g;
    profile.push_back(ProfilePoint{p.z(), g - g_reference, gzz_eotvos(model, p)});
  }
  return profile;
}

DetectabilityReport detectability(const DensityModel& model,
                                  const InstrumentSpec& instrument,
                                  double standoff_min_m, double standoff_max_m,
                                  int samples, double dwell_time_s,
                                  double snr_threshold, const Vec3& direction) {
  instrument.validate();
  if (standoff_max_m <= standoff_min_m) {
    throw DegenerateRange("detectability: standoff_max must exceed standoff_min");
  }
  if (!(standoff_min_m > 0.0)) {
    throw std::invalid_argument("detectability: standoff_min must be > 0");
  }
  if (samples < 2) {
    throw std::invalid_argument("detectability: need samples >= 2");
  }
  if (!(dwell_time_s > 0.0)) {
    throw std::invalid_argument("detectability: dwell time must be > 0");
  }
  if (!(snr_threshold > 0.0)) {
    throw std::invalid_argument("detectability: snr threshold must be > 0");
  }
  if (!instrument.gradient_noise_e_rthz) {
    throw MissingNoiseDensity("instrument '" + instrument.name +
                              "' has no gradient noise density for a "
                              "detectability sweep");
  }
  const double norm = direction.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("detectability: direction must be nonzero");
  }
  const Vec3 unit = direction / norm;
  const Vec3 origin = model.reference_center();
  const double floor_e = *instrument.gradient_noise_e_rthz / std::sqrt(dwell_time_s);

  const auto anomaly_at = [&](double r) {
    return std::abs(gzz_eotvos(model, origin + r * unit));
  };

  DetectabilityReport report;
  report.noise_floor_e = floor_e;
  report.snr_threshold = snr_threshold;
  report.sweep.reserve(static_cast<std::size_t>(samples));

  const double log_min = std::log(standoff_min_m);
  const double log_step = (std::log(standoff_max_m) - log_min) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(log_min + log_step * i);
    const double anomaly = anomaly_at(r);
    const double snr = std::isinf(floor_e) ? 0.0 : anomaly / floor_e;
    report.sweep.push_back(DetectabilitySample{r, anomaly, snr});
    report.anomaly_peak_e = std::max(report.anomaly_peak_e, anomaly);
  }
  report.snr = report.sweep.front().snr;

  // Outermost threshold crossing: scan inward from the far end, then bisect
  // the bracketing pair.
  int outermost = -1;
  for (int i = samples - 1; i >= 0; --i) {
    if (report.sweep[static_cast<std::size_t>(i)].snr >= snr_threshold) {
      outermost = i;
      break;
    }
  }
  if (outermost < 0) {
    report.max_detection_range_m = 0.0;
  } else if (outermost == samples - 1) {
    report.max_detection_range_m = standoff_max_m;  // still detectable at the far edge
  } else {
    double lo = report.sweep[static_cast<std::size_t>(outermost)].standoff_m;
    double hi = report.sweep[static_cast<std::size_t>(outermost) + 1].standoff_m;
    for (int iter = 0; iter < 80 && hi - lo > 1e-9 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (anomaly_at(mid) / floor_e >= snr_threshold) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    report.max_detection_range_m = 0.5 * (lo + hi);
  }
  return report;
}

}  // namespace gradsim
