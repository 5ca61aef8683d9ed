#pragma once

#include <cstddef>
#include <vector>

namespace rcsp {

/// Gauss–Hermite rule for expectations over a standard normal variable,
/// E[f(z)] ≈ Σ w_j f(x_j) with Σ w_j = 1.
class GaussHermite {
 public:
  explicit GaussHermite(int order = 64);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <class F>
  double expect(F&& f) const {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * f(nodes_[j]);
    return s;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Gaussian tail H(x) = P(Z > x) and helpers that stay finite for large |x|.
double gaussian_tail(double x);
double log_gaussian_tail(double x);
/// Density over tail, φ(x)/H(x).
double inverse_mills(double x);
/// Scaled complementary error function exp(x²)·erfc(x).
double erfcx(double x);

}  // namespace rcsp
