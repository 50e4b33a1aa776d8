#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradsim {

/// Shortest decimal representation that round-trips the double exactly.
/// Deterministic across runs, which keeps every emitted file byte-stable.
std::string format_double(double value);

/// Empty string for a missing value.
std::string format_optional(const std::optional<double>& value);

/// RFC-4180 style quoting: fields containing commas, quotes or newlines are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_quote(std::string_view field);

/// Splits one CSV record honoring quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

/// Splits text into lines, dropping a trailing empty line.
std::vector<std::string> split_lines(std::string_view text);

/// Parses a double, throwing ConfigError naming `what` on failure.
double parse_double(std::string_view text, const std::string& what);

/// Parses an optional double: empty input yields nullopt.
std::optional<double> parse_optional_double(std::string_view text,
                                            const std::string& what);

}  // namespace gradsim
