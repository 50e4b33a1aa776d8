#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradsim/field.hpp"
#include "gradsim/interferometer.hpp"
#include "gradsim/noise.hpp"
#include "gradsim/survey.hpp"

namespace gradsim {

std::string_view phase_method_name(PhaseMethod method);

/// Field points with their gradient tensors as CSV: coordinates followed by
/// the nine row-major tensor components in Eotvos.
std::string tensor_csv(std::span<const Vec3> points,
                       std::span<const GradientTensor> tensors);

/// PhaseResult rows: method, delta_phi_rad, error_estimate_rad.
std::string phase_csv(std::span<const PhaseResult> results);

/// Rotation scan rows: angle_rad plus the PhaseResult columns.
std::string cow_scan_csv(std::span<const double> angles_rad,
                         std::span<const PhaseResult> results);

/// Gradiometer run summary (single data row). The min_detectable column is
/// empty unless a phase noise figure was supplied.
std::string gradiometer_csv(const PhaseResult& upper, const PhaseResult& lower,
                            double scale_factor_e_per_rad,
                            double inferred_gradient_e,
                            const std::optional<double>& min_detectable_e);

/// The nine survey columns: waypoint, timestamp_s, elevation_m, then
/// true/measured/sigma for |g| and Gamma_zz. Unmeasured observables leave
/// their cells empty.
std::string measurements_csv(const MeasurementSeries& series);

/// Instrument table round-trippable CSV.
std::string instrument_table_csv(std::span<const InstrumentSpec> instruments);
std::vector<InstrumentSpec> parse_instrument_table_csv(std::string_view text);

/// Route CSV with columns x_m, y_m, z_m, dwell_s (header required).
Route parse_route_csv(std::string_view text, double setup_time_s);

/// Detectability report as key: value lines plus a plot-ready sweep CSV.
std::string detectability_report_text(const DetectabilityReport& report);
std::string detectability_sweep_csv(const DetectabilityReport& report);

/// Anomaly profile rows: elevation_m, g_anomaly_mps2, gzz_E.
std::string anomaly_profile_csv(std::span<const ProfilePoint> profile);

}  // namespace gradsim
