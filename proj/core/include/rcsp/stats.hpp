#pragma once

#include <cstddef>
#include <vector>

namespace rcsp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope·x. Needs two distinct x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson statistic Σ (o − e)² / e over cells with e > 0.
double chi_square_statistic(const std::vector<double>& observed, const std::vector<double>& expected);
/// Upper tail probability of the chi-square distribution.
double chi_square_pvalue(double statistic, double dof);

double median(std::vector<double> v);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& v);

}  // namespace rcsp
