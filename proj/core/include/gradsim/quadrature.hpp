#pragma once

#include <functional>

namespace gradsim {

struct QuadratureResult {
  double value = 0.0;
  /// Conservative absolute error estimate (always >= 0).
  double error_estimate = 0.0;
  /// Number of panels in the final subdivision.
  int panels = 0;
};

/// Single (15,7) Gauss-Kronrod panel over [a, b]. The error estimate follows
/// the classic QUADPACK scaling and is conservative for smooth integrands.
QuadratureResult gauss_kronrod_panel(const std::function<double(double)>& f,
                                     double a, double b);

/// Globally adaptive Gauss-Kronrod integration of f over [a, b] to an
/// absolute tolerance. The worst panel is bisected until the summed error
/// estimate is within tolerance. Throws QuadratureNotConverged when
/// max_panels is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tolerance,
                                    int max_panels = 512);

}  // namespace gradsim
