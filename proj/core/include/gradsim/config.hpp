#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gradsim/field.hpp"
#include "gradsim/interferometer.hpp"
#include "gradsim/noise.hpp"
#include "gradsim/survey.hpp"

namespace gradsim {

/// Typed accessors over the structured JSON config. All physical keys carry
/// unit suffixes (_kg, _m, _mps, _s, _E, ...). Missing or ill-typed keys
/// raise ConfigError naming the key, before any computation starts.

const nlohmann::json& require_section(const nlohmann::json& root,
                                      const std::string& name);
double require_number(const nlohmann::json& object, const std::string& key,
                      const std::string& section);
double number_or(const nlohmann::json& object, const std::string& key,
                 const std::string& section, double fallback);
std::optional<double> optional_number(const nlohmann::json& object,
                                      const std::string& key,
                                      const std::string& section);
Vec3 require_vec3(const nlohmann::json& object, const std::string& key,
                  const std::string& section);

DensityModel parse_density_model(const nlohmann::json& section);

/// Accepts either v_z_mps or effective_wave_vector_rad_per_m (exactly one).
InterferometerConfig parse_interferometer(const nlohmann::json& section);

/// Builds the pair from the interferometer section plus baseline_m.
GradiometerConfig parse_gradiometer(const nlohmann::json& section,
                                    const InterferometerConfig& base);

InstrumentSpec parse_instrument(const nlohmann::json& section);

/// Inline waypoints or a "csv" file reference resolved against base_dir.
Route parse_route(const nlohmann::json& section,
                  const std::filesystem::path& base_dir);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace gradsim
