#include "rcsp/fss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rcsp/stats.hpp"

namespace rcsp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double interpolate(const std::vector<double>& a, const std::vector<double>& p, double x) {
  if (a.empty() || x < a.front() || x > a.back()) return kNaN;
  const auto it = std::lower_bound(a.begin(), a.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - a.begin());
  if (a[j] == x) return p[j];
  const double t = (x - a[j - 1]) / (a[j] - a[j - 1]);
  return p[j - 1] + t * (p[j] - p[j - 1]);
}

}  // namespace

std::vector<double> isotonic_nonincreasing(const std::vector<double>& y, const std::vector<double>& w) {
  if (y.size() != w.size()) throw std::invalid_argument("values and weights differ in length");
  struct Block {
    double mean, weight;
    std::size_t len;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({y[i], w[i] > 0 ? w[i] : 1e-12, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
      const Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      const double wt = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / wt;
      a.weight = wt;
      a.len += b.len;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const Block& b : blocks) out.insert(out.end(), b.len, b.mean);
  return out;
}

double level_crossing(const std::vector<double>& alpha, const std::vector<double>& p, double level) {
  if (alpha.size() != p.size()) throw std::invalid_argument("alpha and p differ in length");
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] >= level && p[i + 1] < level) {
      const double t = (p[i] - level) / (p[i] - p[i + 1]);
      return alpha[i] + t * (alpha[i + 1] - alpha[i]);
    }
  }
  return kNaN;
}

double curve_crossing(const std::vector<double>& a1, const std::vector<double>& p1, const std::vector<double>& a2,
                      const std::vector<double>& p2) {
  std::vector<double> grid(a1);
  grid.insert(grid.end(), a2.begin(), a2.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  // Sign changes of p1 − p2 inside the transition region; the one nearest
  // P = 1/2 wins.
  double best = kNaN, best_dist = std::numeric_limits<double>::infinity();
  double prev_x = kNaN, prev_d = kNaN;
  for (double x : grid) {
    const double u = interpolate(a1, p1, x), v = interpolate(a2, p2, x);
    if (std::isnan(u) || std::isnan(v)) continue;
    const double d = u - v;
    const bool inside = (u > 0.05 && u < 0.95) || (v > 0.05 && v < 0.95);
    if (!std::isnan(prev_d) && inside && d != 0.0 && prev_d != 0.0 && (d > 0) != (prev_d > 0)) {
      const double t = prev_d / (prev_d - d);
      const double root = prev_x + t * (x - prev_x);
      const double pm = 0.5 * (interpolate(a1, p1, root) + interpolate(a2, p2, root));
      if (std::fabs(pm - 0.5) < best_dist) {
        best_dist = std::fabs(pm - 0.5);
        best = root;
      }
    }
    if (d != 0.0) {
      prev_d = d;
      prev_x = x;
    }
  }
  return best;
}

FssFit fss_fit(const std::vector<CurvePoint>& curves) {
  std::map<int, std::vector<const CurvePoint*>> by_n;
  for (const auto& c : curves) by_n[c.n].push_back(&c);
  if (by_n.size() < 3) throw std::invalid_argument("fss_fit needs at least three distinct N");
  FssFit fit;
  std::vector<std::vector<double>> alphas, probs;
  std::vector<double> ln_n, ln_w;
  for (auto& [n, pts] : by_n) {
    std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->alpha < b->alpha; });
    std::vector<double> a, p, w;
    for (const auto* c : pts) {
      a.push_back(c->alpha);
      p.push_back(c->p_hat);
      w.push_back(double(c->trials));
    }
    FssWidth fw;
    fw.n = n;
    if (!std::is_sorted(p.rbegin(), p.rend())) {
      p = isotonic_nonincreasing(p, w);
      fw.smoothed = true;
      fit.smoothed = true;
    }
    fw.alpha_75 = level_crossing(a, p, 0.75);
    fw.alpha_25 = level_crossing(a, p, 0.25);
    fw.width = fw.alpha_25 - fw.alpha_75;
    if (std::isfinite(fw.width) && fw.width > 0) {
      ln_n.push_back(std::log(double(n)));
      ln_w.push_back(std::log(fw.width));
    }
    fit.widths.push_back(fw);
    alphas.push_back(std::move(a));
    probs.push_back(std::move(p));
  }
  if (ln_n.size() >= 2) {
    const LinearFit lf = least_squares(ln_n, ln_w);
    fit.r2 = lf.r2;
    if (lf.slope < 0) {
      fit.valid = true;
      fit.nu = -1.0 / lf.slope;
      fit.nu_err = lf.slope_stderr / (lf.slope * lf.slope);
      fit.nu_below_two = fit.nu < 2.0;
    }
  }
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = i + 1; j < alphas.size(); ++j) {
      const double x = curve_crossing(alphas[i], probs[i], alphas[j], probs[j]);
      if (std::isfinite(x)) fit.pairwise_crossings.push_back(x);
    }
  if (!fit.pairwise_crossings.empty()) {
    fit.alpha_c = median(fit.pairwise_crossings);
    const auto [lo, hi] = std::minmax_element(fit.pairwise_crossings.begin(), fit.pairwise_crossings.end());
    fit.alpha_c_err = 0.5 * (*hi - *lo);
  } else {
    fit.alpha_c = kNaN;
  }
  return fit;
}

}  // namespace rcsp
