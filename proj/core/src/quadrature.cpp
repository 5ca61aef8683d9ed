#include "rcsp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rcsp {

GaussHermite::GaussHermite(int order) {
  if (order < 2 || order > 200) throw std::invalid_argument("Gauss-Hermite order must lie in [2, 200]");
  // Newton iteration on orthonormal physicists' Hermite polynomials, then
  // rescaled to the standard normal weight.
  const int n = order;
  std::vector<double> x(n), w(n);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(double(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  nodes_.resize(n);
  weights_.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    nodes_[n - 1 - i] = std::numbers::sqrt2 * x[i];
    weights_[n - 1 - i] = w[i] / std::sqrt(std::numbers::pi);
    total += weights_[n - 1 - i];
  }
  for (auto& v : weights_) v /= total;
}

double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  const double t = 1.0 / (x * x);
  return (1.0 - 0.5 * t * (1.0 - 1.5 * t * (1.0 - 2.5 * t))) / (x * std::sqrt(std::numbers::pi));
}

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_gaussian_tail(double x) {
  if (x < 0.0) return std::log1p(-0.5 * std::erfc(-x / std::numbers::sqrt2));
  const double y = x / std::numbers::sqrt2;
  return std::log(0.5 * erfcx(y)) - y * y;
}

double inverse_mills(double x) {
  if (x < 0.0) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi) / gaussian_tail(x);
  }
  return std::sqrt(2.0 / std::numbers::pi) / erfcx(x / std::numbers::sqrt2);
}

}  // namespace rcsp
