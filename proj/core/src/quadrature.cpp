#include "gradsim/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "gradsim/errors.hpp"

namespace gradsim {

namespace {

// (15,7) Gauss-Kronrod abscissae and weights on [-1, 1] (QUADPACK dqk15).
constexpr int kKronrodPoints = 8;  // non-negative abscissae; the rest mirror
constexpr double kAbscissa[kKronrodPoints] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kKronrodWeight[kKronrodPoints] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
// Gauss-7 weights attach to abscissae 1, 3, 5, 7 above.
constexpr double kGaussWeight[4] = {0.1294849661688697, 0.2797053914892767,
                                    0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[2 * kKronrodPoints - 1];
  fv[kKronrodPoints - 1] = f(center);
  for (int j = 0; j + 1 < kKronrodPoints; ++j) {
    const double dx = half * kAbscissa[j];
    fv[j] = f(center - dx);
    fv[2 * kKronrodPoints - 2 - j] = f(center + dx);
  }

  double result_kronrod = kKronrodWeight[kKronrodPoints - 1] * fv[kKronrodPoints - 1];
  double result_gauss = kGaussWeight[3] * fv[kKronrodPoints - 1];
  double result_abs = std::abs(result_kronrod);
  for (int j = 0; j + 1 < kKronrodPoints; ++j) {
    const double sum = fv[j] + fv[2 * kKronrodPoints - 2 - j];
    result_kronrod += kKronrodWeight[j] * sum;
    result_abs += kKronrodWeight[j] * (std::abs(fv[j]) + std::abs(fv[2 * kKronrodPoints - 2 - j]));
    if (j % 2 == 1) result_gauss += kGaussWeight[j / 2] * sum;
  }

  const double mean = result_kronrod * 0.5;
  double result_asc = kKronrodWeight[kKronrodPoints - 1] * std::abs(fv[kKronrodPoints - 1] - mean);
  for (int j = 0; j + 1 < kKronrodPoints; ++j) {
    result_asc += kKronrodWeight[j] * (std::abs(fv[j] - mean) +
                                       std::abs(fv[2 * kKronrodPoints - 2 - j] - mean));
  }

  const double value = result_kronrod * half;
  result_abs *= std::abs(half);
  result_asc *= std::abs(half);

  double err = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  if (result_abs > DBL_MIN / (50.0 * DBL_EPSILON)) {
    err = std::max(50.0 * DBL_EPSILON * result_abs, err);
  }
  return Panel{a, b, value, err};
}

}  // namespace

QuadratureResult gauss_kronrod_panel(const std::function<double(double)>& f,
                                     double a, double b) {
  const Panel p = evaluate_panel(f, a, b);
  return QuadratureResult{p.value, p.error, 1};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tolerance,
                                    int max_panels) {
  if (!(abs_tolerance >= 0.0)) {
    throw std::invalid_argument("integrate_adaptive: tolerance must be >= 0");
  }
  if (a == b) return QuadratureResult{0.0, 0.0, 0};

  std::priority_queue<Panel> queue;
  queue.push(evaluate_panel(f, a, b));
  int panels = 1;
  double total_error = queue.top().error;

  while (total_error > abs_tolerance) {
    if (panels >= max_panels) {
      std::ostringstream os;
      os << "adaptive quadrature: interval budget exhausted (error estimate "
         << total_error << " > tolerance " << abs_tolerance << ")";
      throw QuadratureNotConverged(os.str());
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval is at machine resolution; cannot refine further.
      queue.push(worst);
      throw QuadratureNotConverged(
          "adaptive quadrature: interval collapsed to machine resolution "
          "before reaching tolerance");
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Deterministic summation: accumulate panels ordered by left endpoint.
  std::vector<Panel> finals;
  finals.reserve(queue.size());
  while (!queue.empty()) {
    finals.push_back(queue.top());
    queue.pop();
  }
  std::sort(finals.begin(), finals.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double value = 0.0;
  double error = 0.0;
  for (const Panel& p : finals) {
    value += p.value;
    error += p.error;
  }
  return QuadratureResult{value, error, panels};
}

}  // namespace gradsim
