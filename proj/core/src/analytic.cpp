#include "rcsp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "rcsp/quadrature.hpp"

namespace rcsp {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log1p(std::exp(b - a));
}

double to_double_ratio(const boost::multiprecision::cpp_int& num, long den_log2) {
  // num / 2^den_log2 without overflowing either side.
  if (num == 0) return 0.0;
  const long bits = static_cast<long>(boost::multiprecision::msb(num)) + 1;
  const long shift = std::max(0L, bits - 62);
  const auto top = static_cast<double>(static_cast<unsigned long long>(num >> shift));
  return std::ldexp(top, static_cast<int>(shift - den_log2));
}

double log_cosh2(double y) {
  const double a = std::fabs(y);
  return a + std::log1p(std::exp(-2.0 * a));
}

}  // namespace

double cover_probability(long N, long M) {
  if (N < 1 || M < 1) throw std::invalid_argument("cover_probability needs N, M >= 1");
  if (M <= N) return 1.0;
  const long top = std::min(N - 1, M - 1);
  if (N <= 10000 && M <= 10000) {
    using boost::multiprecision::cpp_int;
    cpp_int c = 1, sum = 0;
    for (long i = 0; i <= top; ++i) {
      sum += c;
      c *= (M - 1 - i);
      c /= (i + 1);
    }
    return std::min(1.0, to_double_ratio(sum, M - 1));
  }
  const double lg = std::lgamma(double(M));
  double acc = -INFINITY;
  for (long i = 0; i <= top; ++i)
    acc = log_sum_exp(acc, lg - std::lgamma(double(i + 1)) - std::lgamma(double(M - i)));
  return std::min(1.0, std::exp(acc + (1 - M) * kLn2));
}

double cover_window(double lambda) { return 0.5 * std::erfc(lambda); }

double annealed_exponent(double alpha) { return (1.0 - alpha) * kLn2; }

double second_moment_g2(double alpha, double q) {
  const double a = 0.5 * (1.0 + q), b = 0.5 * (1.0 - q);
  const double overlap = 0.5 - std::acos(std::clamp(q, -1.0, 1.0)) / (2.0 * std::numbers::pi);
  const double constraint = alpha == 0.0 ? 0.0 : alpha * std::log(overlap);
  return kLn2 - xlogx(a) - xlogx(b) + constraint;
}

SecondMomentResult second_moment_exponent(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  constexpr double step = 1e-4;
  double best_q = 0.0, best = second_moment_g2(alpha, 0.0);
  for (long i = -9999; i <= 9999; ++i) {
    const double q = i * step;
    const double v = second_moment_g2(alpha, q);
    if (v > best) best = v, best_q = q;
  }
  const double lo = std::max(-1.0 + 1e-12, best_q - step), hi = std::min(1.0 - 1e-12, best_q + step);
  auto r = boost::math::tools::brent_find_minima(
      [alpha](double q) { return -second_moment_g2(alpha, q); }, lo, hi, 50);
  if (-r.second > best) return {r.first, -r.second};
  return {best_q, best};
}

namespace {

struct RsTerms {
  const GaussHermite& gh;
  double alpha;

  double i_hat(double qh) const {
    const double s = std::sqrt(std::max(qh, 0.0));
    return gh.expect([s](double z) { return log_cosh2(z * s); });
  }
  double mean_tanh2(double qh) const {
    const double s = std::sqrt(std::max(qh, 0.0));
    return gh.expect([s](double z) {
      const double t = std::tanh(z * s);
      return t * t;
    });
  }
  double i2(double q) const {
    const double t = std::sqrt(q / (1.0 - q));
    return gh.expect([t](double z) { return log_gaussian_tail(z * t); });
  }
  // d/dq of i2, written with Stein's lemma so it stays regular at q = 0.
  double i2_prime(double q) const {
    const double t = std::sqrt(q / (1.0 - q));
    const double e = gh.expect([t](double z) {
      const double x = z * t;
      const double m = inverse_mills(x);
      return m * (m - x);
    });
    return -e / (2.0 * (1.0 - q) * (1.0 - q));
  }
  double value(double q, double qh) const {
    return -0.5 * qh * (1.0 - q) + i_hat(qh) + alpha * i2(q);
  }
};

}  // namespace

double rs_functional(double alpha, double q, double q_hat, int quadrature_order) {
  const GaussHermite gh(quadrature_order);
  return RsTerms{gh, alpha}.value(q, q_hat);
}

SaddleResult rs_entropy_perceptron(double alpha, const SaddleOptions& opt) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  SaddleResult out;
  if (alpha == 0.0) {
    out.value = kLn2;
    out.fixed_points = {0.0};
    return out;
  }
  const GaussHermite gh(opt.quadrature_order);
  const RsTerms terms{gh, alpha};
  const int n_init = std::max(1, opt.initializations);
  bool have = false;
  double last_dq = 0.0;
  for (int s = 0; s < n_init; ++s) {
    double q = n_init == 1 ? 0.5 : 0.05 + 0.9 * s / (n_init - 1);
    double qh = 0.0;
    int it = 0;
    bool ok = false;
    for (; it < opt.max_iterations; ++it) {
      // Stationarity in q gives q_hat; stationarity in q_hat gives q.
      qh = -2.0 * alpha * terms.i2_prime(q);
      const double target = terms.mean_tanh2(qh);
      const double next = (1.0 - opt.damping) * target + opt.damping * q;
      last_dq = std::fabs(next - q);
      if (!std::isfinite(next)) break;
      q = std::clamp(next, 0.0, 1.0 - 1e-14);
      if (last_dq < opt.tolerance) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    if (q > 1.0 - 1e-9) {
      // Runaway to the q = 1 edge, where q_hat diverges; not a saddle.
      ++out.edge_runs;
      continue;
    }
    bool seen = false;
    for (double f : out.fixed_points) seen |= std::fabs(f - q) < 1e-6;
    if (!seen) out.fixed_points.push_back(q);
    if (!have || q < out.q) {
      qh = -2.0 * alpha * terms.i2_prime(q);
      out.q = q;
      out.q_hat = qh;
      out.iterations = it + 1;
      have = true;
    }
  }
  if (!have)
    throw NumericError("RS saddle did not converge for alpha=" + std::to_string(alpha) +
                       " after " + std::to_string(opt.max_iterations) +
                       " iterations, last step " + std::to_string(last_dq));
  out.disagreement = out.fixed_points.size() > 1;
  out.value = terms.value(out.q, out.q_hat);
  out.residual_q = 0.5 * out.q_hat + alpha * terms.i2_prime(out.q);
  out.residual_q_hat = out.q - terms.mean_tanh2(out.q_hat);
  return out;
}

double perceptron_threshold(const SaddleOptions& opt, double tol) {
  double lo = 0.5, hi = 1.0;
  if (rs_entropy_perceptron(lo, opt).value <= 0.0 || rs_entropy_perceptron(hi, opt).value >= 0.0)
    throw NumericError("perceptron threshold not bracketed by [0.5, 1]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (rs_entropy_perceptron(mid, opt).value > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double p_success_uc(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (alpha >= 8.0 / 3.0) return 0.0;
  if (alpha == 0.0) return 1.0;
  // -ln P = ∫ λ² / (4 (1 - λ)(1 - t)) dt with λ = (3α/2) t (1 - t), in closed form.
  const double r = std::sqrt(8.0 / (3.0 * alpha) - 1.0);
  return std::exp(-std::atan(1.0 / r) / (2.0 * r) + 3.0 / 16.0 * alpha);
}

double xorsat_core_fixed_point(int k, double alpha) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  double x = 1.0;
  for (int it = 0; it < 1000000; ++it) {
    const double next = -std::expm1(-alpha * k * std::pow(x, k - 1));
    if (std::fabs(next - x) < 1e-15) return next;
    x = next;
    if (x < 1e-12) return 0.0;
  }
  return x;
}

double xorsat_clustering_threshold(int k, double tol) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  // x solves the fixed-point equation iff α = -ln(1-x) / (k x^{k-1}); the
  // threshold is the minimum of that curve over (0, 1).
  auto curve = [k](double x) { return -std::log1p(-x) / (k * std::pow(x, k - 1)); };
  const int bits = std::clamp(static_cast<int>(-std::log2(tol)), 10, 52);
  auto r = boost::math::tools::brent_find_minima(curve, 1e-12, 1.0 - 1e-12, bits);
  return r.second;
}

double contradiction_line(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in [0, 1)");
  return 1.0 / (1.0 - p);
}

}  // namespace rcsp
