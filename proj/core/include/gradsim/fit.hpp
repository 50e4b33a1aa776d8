#pragma once

#include <span>

namespace gradsim {

/// Least-squares slope of log(values) versus log(abscissae). Both spans must
/// have equal size >= 2 and strictly positive entries.
double fit_loglog_slope(std::span<const double> abscissae,
                        std::span<const double> values);

}  // namespace gradsim
