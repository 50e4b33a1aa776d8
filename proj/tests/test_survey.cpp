#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gradsim/constants.hpp"
#include "gradsim/errors.hpp"
#include "gradsim/field.hpp"
#include "gradsim/fit.hpp"
#include "gradsim/serialize.hpp"
#include "gradsim/survey.hpp"

using namespace gradsim;

namespace {

constexpr double kG = PhysicalConstants::gravitational_constant;

DensityModel buried_sphere() {
  return DensityModel({MassBody::uniform_sphere(Vec3(0, 0, -60), 10.0, 2700.0)});
}

Route single_stop(double dwell_s, const Vec3& where = Vec3(0, 0, 1)) {
  Route route;
  route.waypoints.push_back(Waypoint{where, dwell_s});
  route.setup_time_s = 900.0;
  return route;
}

InstrumentSpec dual_instrument(double gradient_e, double accel_g) {
  return InstrumentSpec{"test dual", 1.0, gradient_e, accel_g, "fixture"};
}

}  // namespace

TEST_CASE("zero-noise instrument reproduces the truth exactly") {
  const Route route = single_stop(120.0);
  const MeasurementSeries series =
      simulate_survey(route, buried_sphere(), dual_instrument(0.0, 0.0), 42,
                      SurveyObservables::Both);
  REQUIRE(series.size() == 1);
  CHECK(series[0].measured_g_mps2 == series[0].true_g_mps2);
  CHECK(series[0].measured_gzz_e == series[0].true_gzz_e);
  CHECK(*series[0].sigma_g_mps2 == 0.0);
  CHECK(*series[0].sigma_gzz_e == 0.0);
}

TEST_CASE("birmingham-style dwell gives the 19.19 E sigma") {
  const Route route = single_stop(600.0);
  const InstrumentSpec instrument{"bham", 1.0, 470.0, std::nullopt, ""};
  const MeasurementSeries series = simulate_survey(
      route, buried_sphere(), instrument, 0, SurveyObservables::Gradient);
  REQUIRE(series.size() == 1);
  CHECK(*series[0].sigma_gzz_e ==
        doctest::Approx(470.0 / std::sqrt(600.0)).epsilon(1e-15));
  CHECK(*series[0].sigma_gzz_e == doctest::Approx(19.19).epsilon(1e-3));
  CHECK_FALSE(series[0].true_g_mps2.has_value());
}

TEST_CASE("same seed gives bit-identical series, different seed differs") {
  Route route = single_stop(60.0);
  route.waypoints.push_back(Waypoint{Vec3(30, 0, 2), 90.0});
  const DensityModel model = buried_sphere();
  const InstrumentSpec instrument = dual_instrument(100.0, 4e-8);

  const MeasurementSeries a = simulate_survey(route, model, instrument, 7);
  const MeasurementSeries b = simulate_survey(route, model, instrument, 7);
  CHECK(measurements_csv(a) == measurements_csv(b));

  const MeasurementSeries c = simulate_survey(route, model, instrument, 8);
  CHECK(measurements_csv(a) != measurements_csv(c));
}

TEST_CASE("timestamps advance by setup plus dwell") {
  Route route;
  route.setup_time_s = 900.0;  // 15 min to set up
  route.waypoints.push_back(Waypoint{Vec3(0, 0, 1), 120.0});
  route.waypoints.push_back(Waypoint{Vec3(100, 0, 5), 120.0});
  route.waypoints.push_back(Waypoint{Vec3(200, 0, 9), 180.0});
  const MeasurementSeries series = simulate_survey(
      route, buried_sphere(), dual_instrument(100.0, 4e-8), 1);
  REQUIRE(series.size() == 3);
  CHECK(series[0].timestamp_s == doctest::Approx(1020.0));
  CHECK(series[1].timestamp_s == doctest::Approx(2040.0));
  CHECK(series[2].timestamp_s == doctest::Approx(3120.0));
  CHECK(series[1].timestamp_s > series[0].timestamp_s);
  CHECK(series[2].timestamp_s > series[1].timestamp_s);
}

TEST_CASE("quadrupling dwell time halves every sigma") {
  const DensityModel model = buried_sphere();
  const InstrumentSpec instrument = dual_instrument(100.0, 4e-8);
  const MeasurementSeries base =
      simulate_survey(single_stop(100.0), model, instrument, 3);
  const MeasurementSeries longer =
      simulate_survey(single_stop(400.0), model, instrument, 3);
  CHECK(*longer[0].sigma_g_mps2 ==
        doctest::Approx(0.5 * *base[0].sigma_g_mps2).epsilon(1e-14));
  CHECK(*longer[0].sigma_gzz_e ==
        doctest::Approx(0.5 * *base[0].sigma_gzz_e).epsilon(1e-14));
}

TEST_CASE("ten thousand seeded repetitions reproduce sigma within 3 percent") {
  const Route route = single_stop(100.0);
  const DensityModel model = buried_sphere();
  const InstrumentSpec instrument{"stat", 1.0, 50.0, std::nullopt, ""};

  const int repetitions = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int seed = 0; seed < repetitions; ++seed) {
    const MeasurementSeries series =
        simulate_survey(route, model, instrument,
                        static_cast<std::uint64_t>(seed),
                        SurveyObservables::Gradient);
    const double value = *series[0].measured_gzz_e;
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / repetitions;
  const double variance = sum_sq / repetitions - mean * mean;
  const double sample_sigma = std::sqrt(variance);
  const double expected = 50.0 / std::sqrt(100.0);
  CHECK(std::abs(sample_sigma - expected) <= 0.03 * expected);
}

TEST_CASE("requesting an observable the instrument lacks raises") {
  const Route route = single_stop(60.0);
  const InstrumentSpec gradient_only{"g-only", 1.0, 100.0, std::nullopt, ""};
  CHECK_THROWS_AS(simulate_survey(route, buried_sphere(), gradient_only, 0,
                                  SurveyObservables::Gravity),
                  MissingNoiseDensity);
  CHECK_THROWS_AS(simulate_survey(route, buried_sphere(), gradient_only, 0,
                                  SurveyObservables::Both),
                  MissingNoiseDensity);
  CHECK_NOTHROW(simulate_survey(route, buried_sphere(), gradient_only, 0,
                                SurveyObservables::Gradient));
}

TEST_CASE("waypoint inside a body is rejected") {
  const Route route = single_stop(60.0, Vec3(0, 0, -55));  // inside the sphere
  CHECK_THROWS_AS(simulate_survey(route, buried_sphere(),
                                  dual_instrument(100.0, 4e-8), 0),
                  FieldPointInsideBody);
}

TEST_CASE("route validation") {
  Route route;
  CHECK_THROWS_AS(route.validate(), std::invalid_argument);
  route.waypoints.push_back(Waypoint{Vec3(0, 0, 1), 0.0});
  CHECK_THROWS_AS(route.validate(), std::invalid_argument);
  route.waypoints[0].dwell_time_s = 10.0;
  route.setup_time_s = -1.0;
  CHECK_THROWS_AS(route.validate(), std::invalid_argument);
  route.setup_time_s = 0.0;
  CHECK_NOTHROW(route.validate());
}

TEST_CASE("anomaly profile: flat route over empty model is constant zero") {
  Route route;
  for (int i = 0; i < 5; ++i) {
    route.waypoints.push_back(Waypoint{Vec3(100.0 * i, 0, 2), 60.0});
  }
  const auto profile = anomaly_profile(route, DensityModel());
  REQUIRE(profile.size() == 5);
  for (const ProfilePoint& p : profile) {
    CHECK(p.g_anomaly_mps2 == 0.0);
    CHECK(p.gzz_e == 0.0);
    CHECK(p.elevation_m == 2.0);
  }
}

TEST_CASE("anomaly profile peaks symmetrically over a buried sphere") {
  Route route;
  const int half = 6;
  for (int i = -half; i <= half; ++i) {
    route.waypoints.push_back(Waypoint{Vec3(20.0 * i, 0, 0), 60.0});
  }
  const DensityModel model = buried_sphere();
  const auto profile = anomaly_profile(route, model);
  REQUIRE(profile.size() == 2 * half + 1);

  const std::size_t mid = half;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    CHECK(profile[i].gzz_e <= profile[mid].gzz_e + 1e-12);
    // symmetric pairs agree
    CHECK(profile[i].gzz_e ==
          doctest::Approx(profile[profile.size() - 1 - i].gzz_e).epsilon(1e-12));
  }

  // peak value over the center: 2 G m_eff / depth^3
  const double m_eff = model.effective_mass(model.bodies().front());
  const double depth = 60.0;
  const double expected = to_eotvos(2.0 * kG * m_eff / (depth * depth * depth));
  CHECK(profile[mid].gzz_e == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("detectability of a bare point mass matches the closed form") {
  // 1e7 kg, 10 E/rtHz, 100 s dwell -> floor 1 E; range = (2 G m / 1 E)^(1/3)
  const DensityModel model({MassBody::point_mass(Vec3::Zero(), 1e7)});
  const InstrumentSpec instrument{"sota", 1.0, 10.0, std::nullopt, ""};
  const DetectabilityReport report =
      detectability(model, instrument, 10.0, 1000.0, 64, 100.0);

  CHECK(report.noise_floor_e == doctest::Approx(1.0).epsilon(1e-14));
  const double expected_range =
      std::cbrt(2.0 * kG * 1e7 / PhysicalConstants::eotvos);
  CHECK(report.max_detection_range_m ==
        doctest::Approx(expected_range).epsilon(1e-3));
  CHECK(expected_range == doctest::Approx(110.0).epsilon(5e-3));
  CHECK(report.snr == doctest::Approx(report.anomaly_peak_e).epsilon(1e-12));
  CHECK(report.sweep.size() == 64);
}

TEST_CASE("neutral buoyancy suppresses the detection range by 2x or more") {
  // same gross mass, zero net contrast, 2 m vertical dipole separation
  const DensityModel monopole({MassBody::point_mass(Vec3::Zero(), 1e7)});
  const DensityModel buoyant({MassBody::point_mass(Vec3(0, 0, 1), 5e6),
                              MassBody::point_mass(Vec3(0, 0, -1), -5e6)});
  CHECK(buoyant.gross_effective_mass() == monopole.gross_effective_mass());
  CHECK(buoyant.net_effective_mass() == 0.0);

  const InstrumentSpec instrument{"sota", 1.0, 10.0, std::nullopt, ""};
  const DetectabilityReport mono =
      detectability(monopole, instrument, 10.0, 1000.0, 96, 100.0);
  const DetectabilityReport buoy =
      detectability(buoyant, instrument, 10.0, 1000.0, 96, 100.0);

  CHECK(buoy.max_detection_range_m <= 0.5 * mono.max_detection_range_m);

  // SNR at the monopole's detection range is at least 10x smaller
  const double r = mono.max_detection_range_m;
  const double mono_gzz = std::abs(
      to_eotvos(gradient_tensor(monopole, Vec3(0, 0, r)).components(2, 2)));
  const double buoy_gzz = std::abs(
      to_eotvos(gradient_tensor(buoyant, Vec3(0, 0, r)).components(2, 2)));
  CHECK(buoy_gzz <= 0.1 * mono_gzz);

  // fitted SNR falloff: -3 for the monopole, steeper than -4 when the net
  // contrast cancels
  std::vector<double> radii, mono_snr, buoy_snr;
  for (std::size_t i = 0; i < mono.sweep.size(); ++i) {
    if (mono.sweep[i].standoff_m < 50.0) continue;
    radii.push_back(mono.sweep[i].standoff_m);
    mono_snr.push_back(mono.sweep[i].snr);
    buoy_snr.push_back(buoy.sweep[i].snr);
  }
  CHECK(fit_loglog_slope(radii, mono_snr) == doctest::Approx(-3.0).epsilon(2e-3));
  CHECK(fit_loglog_slope(radii, buoy_snr) <= -4.0);
}

TEST_CASE("detection range is monotone non-increasing in the noise floor") {
  const DensityModel model({MassBody::point_mass(Vec3::Zero(), 1e7)});
  double previous_range = std::numeric_limits<double>::infinity();
  for (double density : {1.0, 10.0, 100.0, 1000.0}) {
    const InstrumentSpec instrument{"x", 1.0, density, std::nullopt, ""};
    const DetectabilityReport report =
        detectability(model, instrument, 5.0, 2000.0, 64, 100.0);
    CHECK(report.max_detection_range_m <= previous_range);
    previous_range = report.max_detection_range_m;
  }
}

TEST_CASE("infinite noise yields zero detection range") {
  const DensityModel model({MassBody::point_mass(Vec3::Zero(), 1e7)});
  const InstrumentSpec instrument{
      "deaf", 1.0, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  const DetectabilityReport report =
      detectability(model, instrument, 10.0, 1000.0, 16, 100.0);
  CHECK(report.max_detection_range_m == 0.0);
  CHECK(report.snr == 0.0);
}

TEST_CASE("detectability rejects bad sweeps and missing densities") {
  const DensityModel model({MassBody::point_mass(Vec3::Zero(), 1e7)});
  const InstrumentSpec gradient{"ok", 1.0, 10.0, std::nullopt, ""};
  const InstrumentSpec accel_only{"acc", 1.0, std::nullopt, 4e-8, ""};
  CHECK_THROWS_AS(detectability(model, gradient, 100.0, 10.0, 16, 100.0),
                  DegenerateRange);
  CHECK_THROWS_AS(detectability(model, accel_only, 10.0, 1000.0, 16, 100.0),
                  MissingNoiseDensity);
}

TEST_CASE("measurement csv has the nine documented columns") {
  const Route route = single_stop(60.0);
  const MeasurementSeries series = simulate_survey(
      route, buried_sphere(), dual_instrument(100.0, 4e-8), 11);
  const std::string csv = measurements_csv(series);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "waypoint,timestamp_s,elevation_m,true_g_mps2,measured_g_mps2,"
        "sigma_g_mps2,true_gzz_E,measured_gzz_E,sigma_gzz_E");
  CHECK(std::count(header.begin(), header.end(), ',') == 8);
}
