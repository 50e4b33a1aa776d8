#include "gradsim/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace gradsim {

double fit_loglog_slope(std::span<const double> abscissae,
                        std::span<const double> values) {
  if (abscissae.size() != values.size() || abscissae.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need matching spans of size >= 2");
  }
  const auto count = static_cast<double>(abscissae.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > 0.0) || !(values[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: entries must be positive");
    }
    const double x = std::log(abscissae[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  }
  return (count * sxy - sx * sy) / denom;
}

}  // namespace gradsim
