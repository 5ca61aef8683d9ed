#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcsp/fss.hpp"
#include "rcsp/rng.hpp"
#include "rcsp/stats.hpp"

namespace rcsp {
namespace {

TEST(Wilson, KnownValues) {
  const Interval a = wilson_interval(5, 10);
  EXPECT_NEAR(a.lo, 0.2365931, 1e-6);
  EXPECT_NEAR(a.hi, 0.7634069, 1e-6);
  const Interval z = wilson_interval(0, 20);
  EXPECT_EQ(z.lo, 0.0);
  EXPECT_NEAR(z.hi, 0.16112516, 1e-7);
}

TEST(LeastSquares, ExactLine) {
  const LinearFit f = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
  EXPECT_THROW(least_squares({1, 1}, {2, 3}), std::invalid_argument);
}

TEST(LeastSquares, StderrKnown) {
  const LinearFit f = least_squares({0, 1, 2}, {0, 2, 1});
  EXPECT_NEAR(f.slope, 0.5, 1e-14);
  EXPECT_NEAR(f.slope_stderr, std::sqrt(1.5 / 2.0), 1e-12);
}

TEST(ChiSquare, Values) {
  EXPECT_DOUBLE_EQ(chi_square_statistic({10, 20}, {15, 15}), 50.0 / 15.0);
  EXPECT_NEAR(chi_square_pvalue(3.841458820694124, 1.0), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_pvalue(0.0, 4.0), 1.0, 1e-15);
}

TEST(Median, OddEven) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
  const MeanStderr m = mean_stderr({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-14);
}

TEST(Isotonic, PoolsViolators) {
  const auto y = isotonic_nonincreasing({1.0, 0.5, 0.7, 0.2}, {1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 0.6);
  EXPECT_DOUBLE_EQ(y[2], 0.6);
  EXPECT_DOUBLE_EQ(y[3], 0.2);
  const auto same = isotonic_nonincreasing({0.9, 0.4, 0.1}, {1, 2, 3});
  EXPECT_EQ(same, (std::vector<double>{0.9, 0.4, 0.1}));
}

TEST(Isotonic, OutputIsMonotoneAndPreservesMass) {
  Rng rng(RngSeed{111, 0});
  for (int t = 0; t < 100; ++t) {
    std::vector<double> y(20), w(20);
    for (int i = 0; i < 20; ++i) y[i] = rng.uniform(), w[i] = 0.5 + rng.uniform();
    const auto z = isotonic_nonincreasing(y, w);
    double sy = 0, sz = 0;
    for (int i = 0; i < 20; ++i) {
      sy += w[i] * y[i];
      sz += w[i] * z[i];
      if (i) EXPECT_LE(z[i], z[i - 1] + 1e-15);
    }
    EXPECT_NEAR(sy, sz, 1e-12);
  }
}

TEST(LevelCrossing, Interpolates) {
  EXPECT_DOUBLE_EQ(level_crossing({0, 1, 2}, {1.0, 0.6, 0.2}, 0.4), 1.5);
  EXPECT_TRUE(std::isnan(level_crossing({0, 1}, {0.9, 0.8}, 0.5)));
}

TEST(CurveCrossing, Lines) {
  const double x = curve_crossing({0, 1, 2}, {1.0, 0.5, 0.0}, {0, 1, 2}, {0.75, 0.5, 0.25});
  EXPECT_NEAR(x, 1.0, 1e-12);
  EXPECT_TRUE(std::isnan(curve_crossing({0, 1}, {1, 1}, {0, 1}, {0, 0})));
}

std::vector<CurvePoint> synthetic(double nu, double ac, double noise_seed = -1) {
  std::vector<CurvePoint> pts;
  Rng rng(RngSeed{112, 0});
  for (int n : {100, 400, 1600, 6400})
    for (int j = 0; j <= 200; ++j) {
      CurvePoint p;
      p.n = n;
      p.alpha = ac - 1.0 + 0.01 * j;
      p.trials = 2000;
      const double q = test::logistic_curve(p.alpha, ac, nu, n, 3.0);
      if (noise_seed < 0) {
        p.successes = static_cast<std::size_t>(std::llround(q * p.trials));
      } else {
        for (std::size_t s = 0; s < p.trials; ++s) p.successes += rng.uniform() < q;
      }
      p.p_hat = double(p.successes) / p.trials;
      pts.push_back(p);
    }
  return pts;
}

TEST(Fss, RecoversNuTwo) {
  const FssFit f = fss_fit(synthetic(2.0, 1.0));
  EXPECT_TRUE(f.valid);
  EXPECT_NEAR(f.nu, 2.0, 0.1);
  EXPECT_NEAR(f.alpha_c, 1.0, 0.01);
  EXPECT_FALSE(f.nu_below_two);
  EXPECT_EQ(f.widths.size(), 4u);
}

TEST(Fss, RecoversNuThreeWithNoise) {
  const FssFit f = fss_fit(synthetic(3.0, 4.0, 1));
  EXPECT_NEAR(f.nu, 3.0, 0.3);
  EXPECT_NEAR(f.alpha_c, 4.0, 0.05);
}

TEST(Fss, FlagsSharpTransitions) {
  const FssFit f = fss_fit(synthetic(1.5, 1.0));
  EXPECT_LT(f.nu, 2.0);
  EXPECT_TRUE(f.nu_below_two);
}

TEST(Fss, NeedsThreeSizes) {
  std::vector<CurvePoint> pts;
  for (const auto& p : synthetic(2.0, 1.0))
    if (p.n <= 400) pts.push_back(p);
  EXPECT_THROW(fss_fit(pts), std::invalid_argument);
}

}  // namespace
}  // namespace rcsp
