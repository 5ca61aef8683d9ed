#pragma once

#include <cstddef>
#include <vector>

namespace rcsp {

/// One point of an empirical P(sat) curve.
struct CurvePoint {
  int k = 0;
  int n = 0;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t censored = 0;  // budget-exceeded verdicts, excluded from trials
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  bool lower_bound = false;  // heuristic decider
};

/// Pool-adjacent-violators fit of a nonincreasing sequence.
std::vector<double> isotonic_nonincreasing(const std::vector<double>& y, const std::vector<double>& w);

/// Linearly interpolated α at which a nonincreasing curve reaches `level`.
/// Returns NaN when the level is not bracketed.
double level_crossing(const std::vector<double>& alpha, const std::vector<double>& p, double level);

/// First α where two curves on (possibly different) grids swap order,
/// searched on the merged grid. NaN when they never cross.
double curve_crossing(const std::vector<double>& a1, const std::vector<double>& p1, const std::vector<double>& a2,
                      const std::vector<double>& p2);

struct FssWidth {
  int n = 0;
  double alpha_75 = 0.0;  // P = 0.75
  double alpha_25 = 0.0;  // P = 0.25
  double width = 0.0;
  bool smoothed = false;
};

struct FssFit {
  double alpha_c = 0.0;
  double alpha_c_err = 0.0;  // half the spread of pairwise crossings
  double nu = 0.0;
  double nu_err = 0.0;
  bool valid = false;        // positive width exponent
  bool smoothed = false;     // some curve needed isotonic smoothing
  bool nu_below_two = false; // ν < 2 reporting flag
  std::vector<FssWidth> widths;
  std::vector<double> pairwise_crossings;
  double r2 = 0.0;
};

/// Window widths W(N) = α(P=0.25) − α(P=0.75), ν from ln W = c − ln N/ν,
/// α_c as the median of the pairwise curve crossings. Requires at least
/// three distinct N.
FssFit fss_fit(const std::vector<CurvePoint>& curves);

}  // namespace rcsp
