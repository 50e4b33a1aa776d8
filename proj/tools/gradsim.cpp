// gradsim: config-driven front end for the gravity-gradiometry toolkit.
//
// Subcommands: field, phase, gradiometer, noise, survey, detect, cow-scan,
// instruments. Each run parses and validates every referenced config section
// before computing anything, writes its outputs atomically (temp file +
// rename) inside the chosen output directory, and prints a one-line summary.
//
// Exit codes: 0 success, 1 configuration error, 2 computation or I/O error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradsim/config.hpp"
#include "gradsim/constants.hpp"
#include "gradsim/csv.hpp"
#include "gradsim/errors.hpp"
#include "gradsim/field.hpp"
#include "gradsim/interferometer.hpp"
#include "gradsim/noise.hpp"
#include "gradsim/serialize.hpp"
#include "gradsim/survey.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  bool verbose = false;
};

class OutputWriter {
 public:
  explicit OutputWriter(const fs::path& dir) : dir_(dir) {}

  void stage(const std::string& name, std::string content) {
    staged_.emplace_back(name, std::move(content));
  }

  // Atomic: each file is written next to its destination and renamed into
  // place, so a failed run never leaves partial output files.
  void commit() const {
    fs::create_directories(dir_);
    for (const auto& [name, content] : staged_) {
      const fs::path target = dir_ / name;
      const fs::path temp = dir_ / (name + ".tmp");
      try {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
          throw gradsim::Error("cannot open '" + temp.string() + "' for writing");
        }
        out << content;
        out.close();
        if (!out) {
          throw gradsim::Error("failed writing '" + temp.string() + "'");
        }
      } catch (...) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw;
      }
      fs::rename(temp, target);
    }
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> staged_;
};

std::uint64_t effective_seed(const json& root, const Options& options) {
  if (options.seed_override) return *options.seed_override;
  if (root.is_object() && root.contains("seed")) {
    if (!root["seed"].is_number_integer() || root["seed"].get<double>() < 0) {
      throw gradsim::ConfigError("key 'seed' must be a non-negative integer");
    }
    return root["seed"].get<std::uint64_t>();
  }
  return 0;
}

gradsim::SurveyObservables parse_observables(const json& root) {
  if (!root.is_object() || !root.contains("survey")) {
    return gradsim::SurveyObservables::Auto;
  }
  const json& section = root["survey"];
  if (!section.is_object() || !section.contains("observables")) {
    return gradsim::SurveyObservables::Auto;
  }
  const std::string value = section["observables"].is_string()
                                ? section["observables"].get<std::string>()
                                : std::string();
  if (value == "auto") return gradsim::SurveyObservables::Auto;
  if (value == "gravity") return gradsim::SurveyObservables::Gravity;
  if (value == "gradient") return gradsim::SurveyObservables::Gradient;
  if (value == "both") return gradsim::SurveyObservables::Both;
  throw gradsim::ConfigError(
      "key 'observables' in section 'survey' must be one of auto, gravity, "
      "gradient, both");
}

int run_field(const json& root, const Options& options) {
  const gradsim::DensityModel model =
      gradsim::parse_density_model(gradsim::require_section(root, "model"));
  const json& section = gradsim::require_section(root, "field");
  if (!section.is_object() || !section.contains("points_m") ||
      !section["points_m"].is_array()) {
    throw gradsim::ConfigError("missing key 'points_m' in section 'field'");
  }
  std::vector<gradsim::Vec3> points;
  for (const json& entry : section["points_m"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number() ||
        !entry[1].is_number() || !entry[2].is_number()) {
      throw gradsim::ConfigError(
          "key 'points_m' in section 'field' must hold [x, y, z] triples");
    }
    points.emplace_back(entry[0].get<double>(), entry[1].get<double>(),
                        entry[2].get<double>());
  }
  if (points.empty()) {
    throw gradsim::ConfigError("key 'points_m' in section 'field' is empty");
  }

  std::vector<gradsim::GradientTensor> tensors;
  tensors.reserve(points.size());
  for (const gradsim::Vec3& p : points) {
    tensors.push_back(gradsim::gradient_tensor(model, p));
  }

  OutputWriter writer(options.out_dir);
  writer.stage("field_tensor.csv", gradsim::tensor_csv(points, tensors));
  writer.commit();
  std::cout << "field: evaluated " << points.size()
            << " points -> field_tensor.csv (gamma_zz[0] = "
            << gradsim::format_double(gradsim::to_eotvos(
                   tensors.front().components(2, 2)))
            << " E)\n";
  return 0;
}

int run_phase(const json& root, const Options& options) {
  const gradsim::InterferometerConfig config = gradsim::parse_interferometer(
      gradsim::require_section(root, "interferometer"));
  const json& section = gradsim::require_section(root, "phase");
  const std::string field_kind =
      section.is_object() && section.contains("field") && section["field"].is_string()
          ? section["field"].get<std::string>()
          : "uniform";
  const std::optional<double> tolerance =
      gradsim::optional_number(section, "tolerance_rad", "phase");

  double g = 0.0;
  gradsim::PhaseResult integrated;
  if (field_kind == "uniform") {
    g = gradsim::require_number(section, "g_mps2", "phase");
    integrated = gradsim::phase_path_integral(
        config, [g](const gradsim::Vec3& p) { return g * p.z(); }, tolerance);
  } else if (field_kind == "model") {
    const gradsim::DensityModel model =
        gradsim::parse_density_model(gradsim::require_section(root, "model"));
    g = gradsim::acceleration(model, config.launch_point_m).norm();
    integrated = gradsim::phase_path_integral(config, model, tolerance);
  } else {
    throw gradsim::ConfigError(
        "key 'field' in section 'phase' must be 'uniform' or 'model'");
  }

  const gradsim::PhaseResult closed = gradsim::phase_closed_form(config, g);
  const std::vector<gradsim::PhaseResult> rows = {closed, integrated};

  OutputWriter writer(options.out_dir);
  writer.stage("phase.csv", gradsim::phase_csv(rows));
  writer.commit();
  std::cout << "phase: closed_form = "
            << gradsim::format_double(closed.delta_phi_rad)
            << " rad, path_integral = "
            << gradsim::format_double(integrated.delta_phi_rad)
            << " rad -> phase.csv\n";
  return 0;
}

int run_gradiometer(const json& root, const Options& options) {
  const gradsim::InterferometerConfig base = gradsim::parse_interferometer(
      gradsim::require_section(root, "interferometer"));
  const json& section = gradsim::require_section(root, "gradiometer");
  const gradsim::GradiometerConfig gradiometer =
      gradsim::parse_gradiometer(section, base);
  const gradsim::DensityModel model =
      gradsim::parse_density_model(gradsim::require_section(root, "model"));
  const std::optional<double> tolerance =
      gradsim::optional_number(section, "tolerance_rad", "gradiometer");
  const std::optional<double> phase_noise =
      gradsim::optional_number(section, "phase_noise_rms_rad", "gradiometer");

  const gradsim::PhaseResult upper =
      gradsim::phase_path_integral(gradiometer.upper, model, tolerance);
  const gradsim::PhaseResult lower =
      gradsim::phase_path_integral(gradiometer.lower, model, tolerance);
  const double difference = upper.delta_phi_rad - lower.delta_phi_rad;
  const double scale_e_per_rad = gradsim::to_eotvos(gradiometer.scale_factor());
  const double inferred_e = difference * scale_e_per_rad;
  std::optional<double> min_detectable;
  if (phase_noise) {
    min_detectable = gradsim::min_detectable_gradient(gradiometer, *phase_noise);
  }

  OutputWriter writer(options.out_dir);
  writer.stage("gradiometer.csv",
               gradsim::gradiometer_csv(upper, lower, scale_e_per_rad,
                                        inferred_e, min_detectable));
  writer.commit();
  std::cout << "gradiometer: phase difference = "
            << gradsim::format_double(difference)
            << " rad, inferred gradient = " << gradsim::format_double(inferred_e)
            << " E -> gradiometer.csv\n";
  return 0;
}

int run_noise(const json& root, const Options& options) {
  const json& section = gradsim::require_section(root, "noise");
  const std::optional<double> density =
      gradsim::optional_number(section, "gradient_noise_E_rtHz", "noise");
  const std::optional<double> tau =
      gradsim::optional_number(section, "averaging_time_s", "noise");
  const std::optional<double> target =
      gradsim::optional_number(section, "target_resolution_E", "noise");
  const std::optional<double> accel =
      gradsim::optional_number(section, "accel_noise_g_rtHz", "noise");
  const std::optional<double> baseline =
      gradsim::optional_number(section, "baseline_m", "noise");

  gradsim::PairCombination combination =
      gradsim::PairCombination::SingleSensorEquivalent;
  if (section.is_object() && section.contains("combination")) {
    const std::string value = section["combination"].is_string()
                                  ? section["combination"].get<std::string>()
                                  : std::string();
    if (value == "independent_pair_rss") {
      combination = gradsim::PairCombination::IndependentPairRSS;
    } else if (value != "single_sensor_equivalent") {
      throw gradsim::ConfigError(
          "key 'combination' in section 'noise' must be "
          "'single_sensor_equivalent' or 'independent_pair_rss'");
    }
  }

  std::string csv = "quantity,value,unit\n";
  std::string summary;
  int computed = 0;
  if (density && tau) {
    const double res = gradsim::resolution_after_averaging(*density, *tau);
    csv += "resolution_after_averaging," + gradsim::format_double(res) + ",E\n";
    summary += " resolution = " + gradsim::format_double(res) + " E";
    ++computed;
  }
  if (density && target) {
    const double time = gradsim::required_averaging_time(*density, *target);
    csv += "required_averaging_time," + gradsim::format_double(time) + ",s\n";
    summary += " required_time = " + gradsim::format_double(time) + " s";
    ++computed;
  }
  if (accel && baseline) {
    const double pair =
        gradsim::gradiometer_noise_from_gravimeters(*accel, *baseline, combination);
    csv += "gradiometer_noise_density," + gradsim::format_double(pair) +
           ",E_rtHz\n";
    summary += " gradiometer_density = " + gradsim::format_double(pair) +
               " E/rtHz";
    ++computed;
  }
  if (computed == 0) {
    throw gradsim::ConfigError(
        "section 'noise' needs gradient_noise_E_rtHz with averaging_time_s "
        "and/or target_resolution_E, or accel_noise_g_rtHz with baseline_m");
  }

  OutputWriter writer(options.out_dir);
  writer.stage("noise.csv", csv);
  writer.commit();
  std::cout << "noise:" << summary << " -> noise.csv\n";
  return 0;
}

int run_survey(const json& root, const Options& options) {
  const gradsim::DensityModel model =
      gradsim::parse_density_model(gradsim::require_section(root, "model"));
  const fs::path base_dir = fs::path(options.config_path).parent_path();
  const gradsim::Route route =
      gradsim::parse_route(gradsim::require_section(root, "route"), base_dir);
  const gradsim::InstrumentSpec instrument =
      gradsim::parse_instrument(gradsim::require_section(root, "instrument"));
  const gradsim::SurveyObservables observables = parse_observables(root);
  const std::uint64_t seed = effective_seed(root, options);

  const gradsim::MeasurementSeries series =
      gradsim::simulate_survey(route, model, instrument, seed, observables);
  const std::vector<gradsim::ProfilePoint> profile =
      gradsim::anomaly_profile(route, model);

  OutputWriter writer(options.out_dir);
  writer.stage("survey_measurements.csv", gradsim::measurements_csv(series));
  writer.stage("anomaly_profile.csv", gradsim::anomaly_profile_csv(profile));
  writer.commit();
  std::cout << "survey: " << series.size() << " waypoints with seed " << seed
            << " -> survey_measurements.csv, anomaly_profile.csv\n";
  return 0;
}

int run_detect(const json& root, const Options& options) {
  const gradsim::DensityModel model =
      gradsim::parse_density_model(gradsim::require_section(root, "model"));
  const gradsim::InstrumentSpec instrument =
      gradsim::parse_instrument(gradsim::require_section(root, "instrument"));
  const json& section = gradsim::require_section(root, "detect");
  const double r_min = gradsim::require_number(section, "standoff_min_m", "detect");
  const double r_max = gradsim::require_number(section, "standoff_max_m", "detect");
  const double dwell = gradsim::require_number(section, "dwell_s", "detect");
  const int samples = static_cast<int>(
      gradsim::number_or(section, "samples", "detect", 64.0));
  const double threshold =
      gradsim::number_or(section, "snr_threshold", "detect", 1.0);
  gradsim::Vec3 direction(0, 0, 1);
  if (section.is_object() && section.contains("direction")) {
    direction = gradsim::require_vec3(section, "direction", "detect");
  }

  const gradsim::DetectabilityReport report = gradsim::detectability(
      model, instrument, r_min, r_max, samples, dwell, threshold, direction);

  OutputWriter writer(options.out_dir);
  writer.stage("detect_report.txt", gradsim::detectability_report_text(report));
  writer.stage("detect_sweep.csv", gradsim::detectability_sweep_csv(report));
  writer.commit();
  std::cout << "detect: max detection range = "
            << gradsim::format_double(report.max_detection_range_m)
            << " m at noise floor "
            << gradsim::format_double(report.noise_floor_e)
            << " E -> detect_report.txt, detect_sweep.csv\n";
  return 0;
}

int run_cow_scan(const json& root, const Options& options) {
  const gradsim::InterferometerConfig config = gradsim::parse_interferometer(
      gradsim::require_section(root, "interferometer"));
  const json& section = gradsim::require_section(root, "cow_scan");
  const double g = gradsim::require_number(section, "g_mps2", "cow_scan");

  std::vector<double> angles;
  if (section.is_object() && section.contains("angles_rad")) {
    if (!section["angles_rad"].is_array()) {
      throw gradsim::ConfigError(
          "key 'angles_rad' in section 'cow_scan' must be an array");
    }
    for (const json& a : section["angles_rad"]) {
      if (!a.is_number()) {
        throw gradsim::ConfigError(
            "key 'angles_rad' in section 'cow_scan' must hold numbers");
      }
      angles.push_back(a.get<double>());
    }
  } else {
    const int count = static_cast<int>(
        gradsim::number_or(section, "angle_count", "cow_scan", 32.0));
    if (count < 2) {
      throw gradsim::ConfigError(
          "key 'angle_count' in section 'cow_scan' must be >= 2");
    }
    for (int i = 0; i < count; ++i) {
      angles.push_back(2.0 * std::numbers::pi * i / count);
    }
  }

  const std::vector<gradsim::PhaseResult> results =
      gradsim::cow_rotation_scan(config, g, angles);

  OutputWriter writer(options.out_dir);
  writer.stage("cow_scan.csv", gradsim::cow_scan_csv(angles, results));
  writer.commit();
  std::cout << "cow-scan: " << results.size()
            << " angles, peak |delta_phi| = "
            << gradsim::format_double(std::abs(
                   gradsim::phase_closed_form(config, g).delta_phi_rad))
            << " rad -> cow_scan.csv\n";
  return 0;
}

int run_instruments(const Options& options) {
  const auto& table = gradsim::reference_instruments();
  OutputWriter writer(options.out_dir);
  writer.stage("instruments.csv", gradsim::instrument_table_csv(table));
  writer.commit();
  std::cout << "instruments: wrote " << table.size()
            << " reference entries -> instruments.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradsim: cold-atom gravity gradiometry simulator"};
  app.fallthrough();

  Options options;
  app.add_option("-c,--config", options.config_path, "JSON config file");
  app.add_option("-o,--out", options.out_dir, "output directory (default .)");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt =
      app.add_option("-s,--seed", seed_value, "seed override for noisy scenarios");
  app.add_flag("-v,--verbose", options.verbose, "chatty parsing output");

  CLI::App* cmd_field = app.add_subcommand(
      "field", "gradient tensor at configured field points");
  CLI::App* cmd_phase = app.add_subcommand(
      "phase", "interferometer phase, closed form and path integral");
  CLI::App* cmd_gradiometer = app.add_subcommand(
      "gradiometer", "doubled-interferometer phase difference");
  CLI::App* cmd_noise = app.add_subcommand(
      "noise", "averaging, required-time and pair-conversion figures");
  CLI::App* cmd_survey = app.add_subcommand(
      "survey", "stop-and-measure survey with seeded measurement noise");
  CLI::App* cmd_detect = app.add_subcommand(
      "detect", "anomaly detectability versus standoff range");
  CLI::App* cmd_cow = app.add_subcommand(
      "cow-scan", "phase versus interferometer-plane rotation angle");
  CLI::App* cmd_instruments = app.add_subcommand(
      "instruments", "emit the built-in instrument reference table");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (seed_opt->count() > 0) options.seed_override = seed_value;

  const bool needs_config = !cmd_instruments->parsed();
  try {
    json root;
    if (needs_config) {
      if (options.config_path.empty()) {
        throw gradsim::ConfigError("missing --config (required for this subcommand)");
      }
      root = gradsim::load_json_file(options.config_path);
      if (options.verbose) {
        std::cout << "loaded config " << options.config_path << "\n";
      }
    }

    if (cmd_field->parsed()) return run_field(root, options);
    if (cmd_phase->parsed()) return run_phase(root, options);
    if (cmd_gradiometer->parsed()) return run_gradiometer(root, options);
    if (cmd_noise->parsed()) return run_noise(root, options);
    if (cmd_survey->parsed()) return run_survey(root, options);
    if (cmd_detect->parsed()) return run_detect(root, options);
    if (cmd_cow->parsed()) return run_cow_scan(root, options);
    if (cmd_instruments->parsed()) return run_instruments(options);
    return 1;
  } catch (const gradsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const gradsim::Error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
