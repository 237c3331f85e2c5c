#include "qlab/closed_forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

// Empirical fit constant for the six-outcome trine measurement angle; not a
// derived quantity.
constexpr double kTrineFitConstant = 29.591;

void require_unit_interval(double x, const char* name) {
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(x));
  }
}

}  // namespace

double clone_fidelity(double x) {
  require_unit_interval(x, "overlap");
  return 0.5 * (1.0 + x * x * x + (1.0 - x * x) * std::sqrt(1.0 + x * x));
}

double helstrom_success(double x) {
  require_unit_interval(x, "overlap");
  return 0.5 * (1.0 + std::sqrt(1.0 - x * x));
}

double two_state_accessible(double theta, double p_skew) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  return 0.5 * (1.0 + std::sqrt(c2 + (p_skew * p_skew * c2 + s2) * s2));
}

double two_state_quantumness(double x) {
  require_unit_interval(x, "overlap");
  return 0.5 * (1.0 + std::sqrt(1.0 - x * x + x * x * x * x));
}

double uniform_fidelity(int d, int nu) {
  if (d < 2) throw std::invalid_argument("uniform_fidelity: need d >= 2");
  if (nu != 1 && nu != 2 && nu != 4) {
    throw std::invalid_argument("uniform_fidelity: nu must be 1, 2 or 4");
  }
  const double hd = 0.5 * nu * d;
  const double hn = 0.5 * nu;
  return d * std::exp(std::lgamma(hd) + std::lgamma(hn + 2.0) - std::lgamma(hn) -
                      std::lgamma(hd + 2.0));
}

double trine_srm(double alpha) {
  require_unit_interval(alpha, "alpha");
  const double a = alpha;
  const double lift = std::sqrt(a) * std::pow(1.0 - a, 1.5);
  const double inner = 9.0 - 24.0 * a + 126.0 * a * a - 200.0 * a * a * a +
                       105.0 * a * a * a * a +
                       4.0 * std::sqrt(2.0) * lift * (3.0 + 8.0 * a - 15.0 * a * a);
  return (3.0 + a * a + 2.0 * std::sqrt(2.0) * lift + std::sqrt(inner)) / 8.0;
}

double shor_fit_sin2phi(double alpha) {
  return (1.0 - alpha) / (1.0 + kTrineFitConstant * alpha);
}

double b92_rate(double x) {
  require_unit_interval(x, "overlap");
  return 1.0 - x;
}

double trine_usd(double alpha) {
  require_unit_interval(alpha, "alpha");
  return alpha <= 1.0 / 3.0 ? 3.0 * alpha : 1.5 * (1.0 - alpha);
}

double figure_of_merit_two_state(double x) {
  return b92_rate(x) * (1.0 - two_state_quantumness(x));
}

double figure_of_merit_trine(double alpha) {
  return trine_usd(alpha) * (1.0 - trine_srm(alpha));
}

ScalarOptimum scalar_maximize(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points, double arg_tol) {
  if (!(hi > lo)) throw std::invalid_argument("scalar_maximize: empty interval");
  if (grid_points < 3) throw std::invalid_argument("scalar_maximize: need >= 3 grid points");

  double best_x = lo;
  double best_v = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (grid_points - 1);
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }

  // Golden-section refinement inside the bracketing grid cells.
  const double step = (hi - lo) / (grid_points - 1);
  double a = std::max(lo, best_x - step);
  double b = std::min(hi, best_x + step);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > arg_tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  ScalarOptimum out{mid, fm};
  if (f1 > out.value) out = {x1, f1};
  if (f2 > out.value) out = {x2, f2};
  if (best_v > out.value) out = {best_x, best_v};
  return out;
}

ScalarOptimum scalar_minimize(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points, double arg_tol) {
  const ScalarOptimum m = scalar_maximize([&f](double x) { return -f(x); }, lo, hi,
                                          grid_points, arg_tol);
  return {m.arg, -m.value};
}

}  // namespace qlab
