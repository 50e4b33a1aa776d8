#include "gradsim/serialize.hpp"

#include <stdexcept>

#include "gradsim/csv.hpp"
#include "gradsim/errors.hpp"

namespace gradsim {

namespace {

constexpr std::string_view kInstrumentHeader =
    "name,baseline_m,gradient_noise_E_rtHz,accel_noise_g_rtHz,source_note";
constexpr std::string_view kRouteHeader = "x_m,y_m,z_m,dwell_s";

void append_row(std::string& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string& field : fields) {
    if (!first) out.push_back(',');
    out += field;
    first = false;
  }
  out.push_back('\n');
}

}  // namespace

std::string_view phase_method_name(PhaseMethod method) {
  return method == PhaseMethod::ClosedForm ? "closed_form" : "path_integral";
}

std::string tensor_csv(std::span<const Vec3> points,
                       std::span<const GradientTensor> tensors) {
  if (points.size() != tensors.size()) {
    throw std::invalid_argument("tensor_csv: points/tensors size mismatch");
  }
  std::string out =
      "x_m,y_m,z_m,gamma_xx_E,gamma_xy_E,gamma_xz_E,gamma_yx_E,gamma_yy_E,"
      "gamma_yz_E,gamma_zx_E,gamma_zy_E,gamma_zz_E\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Mat3 e = tensors[k].in_eotvos();
    out += format_double(points[k].x()) + ',' + format_double(points[k].y()) +
           ',' + format_double(points[k].z());
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out.push_back(',');
        out += format_double(e(i, j));
      }
    }
    out.push_back('\n');
  }
  return out;
}

std::string phase_csv(std::span<const PhaseResult> results) {
  std::string out = "method,delta_phi_rad,error_estimate_rad\n";
  for (const PhaseResult& r : results) {
    append_row(out, {std::string(phase_method_name(r.method)),
                     format_double(r.delta_phi_rad),
                     format_double(r.quadrature_error_estimate_rad)});
  }
  return out;
}

std::string cow_scan_csv(std::span<const double> angles_rad,
                         std::span<const PhaseResult> results) {
  if (angles_rad.size() != results.size()) {
    throw std::invalid_argument("cow_scan_csv: angles/results size mismatch");
  }
  std::string out = "angle_rad,method,delta_phi_rad,error_estimate_rad\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    append_row(out, {format_double(angles_rad[i]),
                     std::string(phase_method_name(results[i].method)),
                     format_double(results[i].delta_phi_rad),
                     format_double(results[i].quadrature_error_estimate_rad)});
  }
  return out;
}

std::string gradiometer_csv(const PhaseResult& upper, const PhaseResult& lower,
                            double scale_factor_e_per_rad,
                            double inferred_gradient_e,
                            const std::optional<double>& min_detectable_e) {
  std::string out =
      "delta_phi_upper_rad,delta_phi_lower_rad,difference_rad,"
      "scale_factor_E_per_rad,inferred_gradient_E,min_detectable_E\n";
  append_row(out, {format_double(upper.delta_phi_rad),
                   format_double(lower.delta_phi_rad),
                   format_double(upper.delta_phi_rad - lower.delta_phi_rad),
                   format_double(scale_factor_e_per_rad),
                   format_double(inferred_gradient_e),
                   format_optional(min_detectable_e)});
  return out;
}

std::string measurements_csv(const MeasurementSeries& series) {
  std::string out =
      "waypoint,timestamp_s,elevation_m,true_g_mps2,measured_g_mps2,"
      "sigma_g_mps2,true_gzz_E,measured_gzz_E,sigma_gzz_E\n";
  for (const Measurement& m : series) {
    append_row(out, {std::to_string(m.waypoint_index),
                     format_double(m.timestamp_s), format_double(m.elevation_m),
                     format_optional(m.true_g_mps2),
                     format_optional(m.measured_g_mps2),
                     format_optional(m.sigma_g_mps2),
                     format_optional(m.true_gzz_e),
                     format_optional(m.measured_gzz_e),
                     format_optional(m.sigma_gzz_e)});
  }
  return out;
}

std::string instrument_table_csv(std::span<const InstrumentSpec> instruments) {
  std::string out = std::string(kInstrumentHeader) + '\n';
  for (const InstrumentSpec& spec : instruments) {
    append_row(out, {csv_quote(spec.name), format_double(spec.baseline_m),
                     format_optional(spec.gradient_noise_e_rthz),
                     format_optional(spec.accel_noise_g_rthz),
                     csv_quote(spec.source_note)});
  }
  return out;
}

std::vector<InstrumentSpec> parse_instrument_table_csv(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines.front() != kInstrumentHeader) {
    throw ConfigError("instrument table: expected header '" +
                      std::string(kInstrumentHeader) + "'");
  }
  std::vector<InstrumentSpec> instruments;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i]);
    if (fields.size() != 5) {
      throw ConfigError("instrument table: row " + std::to_string(i) +
                        " has " + std::to_string(fields.size()) +
                        " fields, expected 5");
    }
    InstrumentSpec spec;
    spec.name = fields[0];
    spec.baseline_m = parse_double(fields[1], "baseline_m");
    spec.gradient_noise_e_rthz =
        parse_optional_double(fields[2], "gradient_noise_E_rtHz");
    spec.accel_noise_g_rthz =
        parse_optional_double(fields[3], "accel_noise_g_rtHz");
    spec.source_note = fields[4];
    spec.validate();
    instruments.push_back(std::move(spec));
  }
  return instruments;
}

Route parse_route_csv(std::string_view text, double setup_time_s) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines.front() != kRouteHeader) {
    throw ConfigError("route csv: expected header '" + std::string(kRouteHeader) + "'");
  }
  Route route;
  route.setup_time_s = setup_time_s;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i]);
    if (fields.size() != 4) {
      throw ConfigError("route csv: row " + std::to_string(i) + " has " +
                        std::to_string(fields.size()) + " fields, expected 4");
    }
    Waypoint wp;
    wp.position_m = Vec3(parse_double(fields[0], "x_m"),
                         parse_double(fields[1], "y_m"),
                         parse_double(fields[2], "z_m"));
    wp.dwell_time_s = parse_double(fields[3], "dwell_s");
    route.waypoints.push_back(wp);
  }
  route.validate();
  return route;
}

std::string detectability_report_text(const DetectabilityReport& report) {
  std::string out;
  out += "anomaly_peak_E: " + format_double(report.anomaly_peak_e) + '\n';
  out += "noise_floor_E: " + format_double(report.noise_floor_e) + '\n';
  out += "snr: " + format_double(report.snr) + '\n';
  out += "snr_threshold: " + format_double(report.snr_threshold) + '\n';
  out += "max_detection_range_m: " + format_double(report.max_detection_range_m) + '\n';
  return out;
}

std::string detectability_sweep_csv(const DetectabilityReport& report) {
  std::string out = "standoff_m,anomaly_E,snr\n";
  for (const DetectabilitySample& s : report.sweep) {
    append_row(out, {format_double(s.standoff_m), format_double(s.anomaly_e),
                     format_double(s.snr)});
  }
  return out;
}

std::string anomaly_profile_csv(std::span<const ProfilePoint> profile) {
  std::string out = "elevation_m,g_anomaly_mps2,gzz_E\n";
  for (const ProfilePoint& p : profile) {
    append_row(out, {format_double(p.elevation_m),
                     format_double(p.g_anomaly_mps2), format_double(p.gzz_e)});
  }
  return out;
}

}  // namespace gradsim
