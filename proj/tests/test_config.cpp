#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "gradsim/config.hpp"
#include "gradsim/errors.hpp"
#include "gradsim/serialize.hpp"

using namespace gradsim;
using nlohmann::json;

TEST_CASE("density model parses all body kinds and the background") {
  const json section = json::parse(R"({
    "background_density_kgm3": 1025.0,
    "bodies": [
      {"kind": "point_mass", "center_m": [0, 0, -50], "mass_kg": 1e7},
      {"kind": "uniform_sphere", "center_m": [10, 0, -40], "radius_m": 4.0,
       "density_kgm3": 1300.0},
      {"kind": "composite", "children": [
         {"kind": "point_mass", "center_m": [0, 0, 0], "mass_kg": 5.0},
         {"kind": "point_mass", "center_m": [1, 0, 0], "mass_kg": -5.0}
      ]}
    ]
  })");
  const DensityModel model = parse_density_model(section);
  CHECK(model.bodies().size() == 3);
  CHECK(model.background_density() == 1025.0);
  CHECK(model.bodies()[0].kind() == BodyKind::PointMass);
  CHECK(model.bodies()[1].kind() == BodyKind::UniformSphere);
  CHECK(model.bodies()[2].kind() == BodyKind::Composite);
  CHECK(model.bodies()[2].mass() == 0.0);
}

TEST_CASE("empty model section is a valid empty model") {
  const DensityModel model = parse_density_model(json::object());
  CHECK(model.bodies().empty());
}

TEST_CASE("unknown body kind names the problem") {
  const json section = json::parse(
      R"({"bodies": [{"kind": "cube", "center_m": [0,0,0], "mass_kg": 1}]})");
  CHECK_THROWS_WITH_AS(parse_density_model(section),
                       doctest::Contains("cube"), ConfigError);
}

TEST_CASE("interferometer section with explicit v_z") {
  const json section = json::parse(R"({
    "atom_mass_kg": 1.44316060e-25,
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.1,
    "v_z_mps": 0.005,
    "pulse_interval_s": 0.1
  })");
  const InterferometerConfig config = parse_interferometer(section);
  CHECK(config.v_z_mps == 0.005);
  CHECK(config.effective_wave_vector() > 0.0);
}

TEST_CASE("interferometer section with a target wave vector") {
  const json section = json::parse(R"({
    "atom_mass_kg": 1.44316060e-25,
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.1,
    "effective_wave_vector_rad_per_m": 1.6e7,
    "pulse_interval_s": 0.1
  })");
  const InterferometerConfig config = parse_interferometer(section);
  CHECK(config.effective_wave_vector() == doctest::Approx(1.6e7).epsilon(1e-12));
}

TEST_CASE("missing atom_mass_kg is reported by name") {
  const json section = json::parse(R"({
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.1,
    "v_z_mps": 0.005,
    "pulse_interval_s": 0.1
  })");
  CHECK_THROWS_WITH_AS(parse_interferometer(section),
                       doctest::Contains("atom_mass_kg"), ConfigError);
}

TEST_CASE("v_z and wave vector are mutually exclusive") {
  json section = json::parse(R"({
    "atom_mass_kg": 1.44316060e-25,
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.1,
    "v_z_mps": 0.005,
    "effective_wave_vector_rad_per_m": 1.6e7,
    "pulse_interval_s": 0.1
  })");
  CHECK_THROWS_AS(parse_interferometer(section), ConfigError);
  section.erase("v_z_mps");
  section.erase("effective_wave_vector_rad_per_m");
  CHECK_THROWS_AS(parse_interferometer(section), ConfigError);
}

TEST_CASE("invalid physics values become ConfigError with the reason") {
  const json section = json::parse(R"({
    "atom_mass_kg": 1.44316060e-25,
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.0,
    "v_z_mps": 0.005,
    "pulse_interval_s": 0.1
  })");
  CHECK_THROWS_WITH_AS(parse_interferometer(section),
                       doctest::Contains("v_x_mps"), ConfigError);
}

TEST_CASE("gradiometer section builds the offset pair") {
  const json interferometer = json::parse(R"({
    "atom_mass_kg": 1.44316060e-25,
    "launch_point_m": [0, 0, 0],
    "v_x_mps": 0.1,
    "v_z_mps": 0.005,
    "pulse_interval_s": 0.1
  })");
  const InterferometerConfig base = parse_interferometer(interferometer);
  const GradiometerConfig gradiometer =
      parse_gradiometer(json::parse(R"({"baseline_m": 1.0})"), base);
  CHECK(gradiometer.baseline_m == 1.0);
  CHECK(gradiometer.upper.launch_point_m.z() == 1.0);
  CHECK_THROWS_WITH_AS(parse_gradiometer(json::object(), base),
                       doctest::Contains("baseline_m"), ConfigError);
}

TEST_CASE("instrument section parses optional densities") {
  const json section = json::parse(R"({
    "name": "Birmingham cartography gradiometer",
    "baseline_m": 1.0,
    "gradient_noise_E_rtHz": 470.0
  })");
  const InstrumentSpec spec = parse_instrument(section);
  CHECK(spec.gradient_noise_e_rthz == 470.0);
  CHECK_FALSE(spec.accel_noise_g_rthz.has_value());

  CHECK_THROWS_WITH_AS(
      parse_instrument(json::parse(R"({"name": "x", "baseline_m": 1.0})")),
      doctest::Contains("noise density"), ConfigError);
}

TEST_CASE("inline route waypoints") {
  const json section = json::parse(R"({
    "setup_time_s": 900,
    "waypoints": [
      {"x_m": 0, "y_m": 0, "z_m": 1, "dwell_s": 120},
      {"x_m": 100, "y_m": 0, "z_m": 5, "dwell_s": 180}
    ]
  })");
  const Route route = parse_route(section, ".");
  CHECK(route.waypoints.size() == 2);
  CHECK(route.setup_time_s == 900.0);
  CHECK(route.waypoints[1].position_m.z() == 5.0);
  CHECK(route.waypoints[1].dwell_time_s == 180.0);
}

TEST_CASE("route csv text parses with the documented header") {
  const std::string text = "x_m,y_m,z_m,dwell_s\n0,0,1,120\n100,5,2,60\n";
  const Route route = parse_route_csv(text, 900.0);
  CHECK(route.waypoints.size() == 2);
  CHECK(route.waypoints[0].dwell_time_s == 120.0);
  CHECK(route.waypoints[1].position_m.x() == 100.0);

  CHECK_THROWS_AS(parse_route_csv("x,y,z\n1,2,3\n", 0.0), ConfigError);
  CHECK_THROWS_AS(parse_route_csv("x_m,y_m,z_m,dwell_s\n1,2,3\n", 0.0),
                  ConfigError);
}

TEST_CASE("csv quoting survives commas and quotes") {
  const InstrumentSpec spec{
      "odd, \"name\"", 1.0, 10.0, std::nullopt, "note with, comma and \"quote\""};
  const std::string csv = instrument_table_csv(std::vector<InstrumentSpec>{spec});
  const auto parsed = parse_instrument_table_csv(csv);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].name == spec.name);
  CHECK(parsed[0].source_note == spec.source_note);
}

TEST_CASE("missing sections are reported by name") {
  const json root = json::object();
  CHECK_THROWS_WITH_AS(require_section(root, "model"),
                       doctest::Contains("model"), ConfigError);
}
