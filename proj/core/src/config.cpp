#include "gradsim/config.hpp"

#include <fstream>
#include <sstream>

#include "gradsim/errors.hpp"
#include "gradsim/serialize.hpp"

namespace gradsim {

namespace {

using nlohmann::json;

[[noreturn]] void missing(const std::string& key, const std::string& section) {
  throw ConfigError("missing key '" + key + "' in section '" + section + "'");
}

MassBody parse_body(const json& body, const std::string& section) {
  if (!body.is_object()) {
    throw ConfigError("each entry of 'bodies' must be an object in section '" +
                      section + "'");
  }
  if (!body.contains("kind") || !body["kind"].is_string()) {
    missing("kind", section);
  }
  const std::string kind = body["kind"].get<std::string>();
  if (kind == "point_mass") {
    return MassBody::point_mass(require_vec3(body, "center_m", section),
                                require_number(body, "mass_kg", section));
  }
  if (kind == "uniform_sphere") {
    return MassBody::uniform_sphere(require_vec3(body, "center_m", section),
                                    require_number(body, "radius_m", section),
                                    require_number(body, "density_kgm3", section));
  }
  if (kind == "composite") {
    if (!body.contains("children") || !body["children"].is_array()) {
      missing("children", section);
    }
    std::vector<MassBody> children;
    for (const json& child : body["children"]) {
      children.push_back(parse_body(child, section));
    }
    return MassBody::composite(std::move(children));
  }
  throw ConfigError("unknown body kind '" + kind + "' in section '" + section +
                    "' (expected point_mass, uniform_sphere or composite)");
}

}  // namespace

const json& require_section(const json& root, const std::string& name) {
  if (!root.is_object() || !root.contains(name)) {
    throw ConfigError("missing section '" + name + "' in config");
  }
  return root[name];
}

double require_number(const json& object, const std::string& key,
                      const std::string& section) {
  if (!object.is_object() || !object.contains(key)) missing(key, section);
  if (!object[key].is_number()) {
    throw ConfigError("key '" + key + "' in section '" + section +
                      "' must be a number");
  }
  return object[key].get<double>();
}

double number_or(const json& object, const std::string& key,
                 const std::string& section, double fallback) {
  if (!object.is_object() || !object.contains(key)) return fallback;
  if (!object[key].is_number()) {
    throw ConfigError("key '" + key + "' in section '" + section +
                      "' must be a number");
  }
  return object[key].get<double>();
}

std::optional<double> optional_number(const json& object, const std::string& key,
                                      const std::string& section) {
  if (!object.is_object() || !object.contains(key) || object[key].is_null()) {
    return std::nullopt;
  }
  if (!object[key].is_number()) {
    throw ConfigError("key '" + key + "' in section '" + section +
                      "' must be a number");
  }
  return object[key].get<double>();
}

Vec3 require_vec3(const json& object, const std::string& key,
                  const std::string& section) {
  if (!object.is_object() || !object.contains(key)) missing(key, section);
  const json& value = object[key];
  if (!value.is_array() || value.size() != 3 || !value[0].is_number() ||
      !value[1].is_number() || !value[2].is_number()) {
    throw ConfigError("key '" + key + "' in section '" + section +
                      "' must be an array of 3 numbers");
  }
  return Vec3(value[0].get<double>(), value[1].get<double>(),
              value[2].get<double>());
}

DensityModel parse_density_model(const json& section) {
  const std::string name = "model";
  if (!section.is_object()) {
    throw ConfigError("section 'model' must be an object");
  }
  const double background = number_or(section, "background_density_kgm3", name, 0.0);
  std::vector<MassBody> bodies;
  if (section.contains("bodies")) {
    if (!section["bodies"].is_array()) {
      throw ConfigError("key 'bodies' in section 'model' must be an array");
    }
    for (const json& body : section["bodies"]) {
      bodies.push_back(parse_body(body, name));
    }
  }
  try {
    return DensityModel(std::move(bodies), background);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'model': ") + e.what());
  }
}

InterferometerConfig parse_interferometer(const json& section) {
  const std::string name = "interferometer";
  const double atom_mass = require_number(section, "atom_mass_kg", name);
  const Vec3 launch = require_vec3(section, "launch_point_m", name);
  const double v_x = require_number(section, "v_x_mps", name);
  const double pulse_interval = require_number(section, "pulse_interval_s", name);
  const std::optional<double> v_z = optional_number(section, "v_z_mps", name);
  const std::optional<double> k_eff =
      optional_number(section, "effective_wave_vector_rad_per_m", name);
  if (v_z.has_value() == k_eff.has_value()) {
    throw ConfigError(
        "section 'interferometer' needs exactly one of 'v_z_mps' and "
        "'effective_wave_vector_rad_per_m'");
  }
  try {
    if (k_eff) {
      return InterferometerConfig::from_effective_wave_vector(
          atom_mass, launch, v_x, *k_eff, pulse_interval);
    }
    InterferometerConfig config{atom_mass, launch, v_x, *v_z, pulse_interval};
    config.validate();
    return config;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'interferometer': ") + e.what());
  }
}

GradiometerConfig parse_gradiometer(const json& section,
                                    const InterferometerConfig& base) {
  const double baseline = require_number(section, "baseline_m", "gradiometer");
  try {
    return GradiometerConfig(base, baseline);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'gradiometer': ") + e.what());
  }
}

InstrumentSpec parse_instrument(const json& section) {
  const std::string name = "instrument";
  InstrumentSpec spec;
  if (!section.is_object() || !section.contains("name") ||
      !section["name"].is_string()) {
    missing("name", name);
  }
  spec.name = section["name"].get<std::string>();
  spec.baseline_m = require_number(section, "baseline_m", name);
  spec.gradient_noise_e_rthz =
      optional_number(section, "gradient_noise_E_rtHz", name);
  spec.accel_noise_g_rthz = optional_number(section, "accel_noise_g_rtHz", name);
  if (section.contains("source_note") && section["source_note"].is_string()) {
    spec.source_note = section["source_note"].get<std::string>();
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'instrument': ") + e.what());
  }
  return spec;
}

Route parse_route(const json& section, const std::filesystem::path& base_dir) {
  const std::string name = "route";
  const double setup = number_or(section, "setup_time_s", name, 0.0);
  if (section.contains("csv")) {
    if (!section["csv"].is_string()) {
      throw ConfigError("key 'csv' in section 'route' must be a file path string");
    }
    std::filesystem::path path = section["csv"].get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("cannot open route csv '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_route_csv(buffer.str(), setup);
  }
  if (!section.contains("waypoints") || !section["waypoints"].is_array()) {
    missing("waypoints", name);
  }
  Route route;
  route.setup_time_s = setup;
  for (const json& wp : section["waypoints"]) {
    Waypoint waypoint;
    waypoint.position_m = Vec3(require_number(wp, "x_m", name),
                               require_number(wp, "y_m", name),
                               require_number(wp, "z_m", name));
    waypoint.dwell_time_s = require_number(wp, "dwell_s", name);
    route.waypoints.push_back(waypoint);
  }
  try {
    route.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'route': ") + e.what());
  }
  return route;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " +
                      e.what());
  }
}

}  // namespace gradsim
