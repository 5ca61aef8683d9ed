#pragma once

#include <stdexcept>
#include <vector>

namespace rcsp {

/// Raised when an iterative numerical method fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability that M random points in general position in N dimensions
/// lie in a common half-space through the origin.
double cover_probability(long N, long M);
/// Large-N limit of cover_probability at M = 2N(1 + λ N^{-1/2}).
double cover_window(double lambda);

/// (1 - α) ln 2: log of the expected number of binary perceptron solutions per variable.
double annealed_exponent(double alpha);

/// Second-moment exponent G2(q) for overlap q in (-1, 1).
double second_moment_g2(double alpha, double q);

struct SecondMomentResult {
  double q = 0.0;
  double g2 = 0.0;
};
/// Global maximum of G2 over q: 1e-4 grid scan, then Brent refinement.
SecondMomentResult second_moment_exponent(double alpha);

struct SaddleResult {
  double q = 0.0;
  double q_hat = 0.0;
  double value = 0.0;
  int iterations = 0;
  /// Residuals of the two stationarity conditions at the returned point.
  double residual_q = 0.0;
  double residual_q_hat = 0.0;
  /// Distinct fixed points reached from the spread initializations.
  std::vector<double> fixed_points;
  bool disagreement = false;
  /// Initializations that ran off to the q = 1 edge.
  int edge_runs = 0;
};

struct SaddleOptions {
  int quadrature_order = 64;
  double tolerance = 1e-10;
  int max_iterations = 10000;
  double damping = 0.0;
  int initializations = 5;
};

/// Replica-symmetric entropy of the binary perceptron with ±1 patterns.
/// Throws NumericError when no initialization converges.
SaddleResult rs_entropy_perceptron(double alpha, const SaddleOptions& opt = {});
/// Functional value at a given (q, q_hat).
double rs_functional(double alpha, double q, double q_hat, int quadrature_order = 64);
/// Root of the RS entropy in α, by bisection.
double perceptron_threshold(const SaddleOptions& opt = {}, double tol = 1e-6);

/// Large-N success probability of the unit-clause heuristic on 3-SAT; zero for α ≥ 8/3.
double p_success_uc(double alpha);

/// Smallest α for which x = 1 - exp(-α k x^{k-1}) has a solution in (0, 1].
double xorsat_clustering_threshold(int k, double tol = 1e-9);
/// Largest fixed point of the map x -> 1 - exp(-α k x^{k-1}) (0 if none).
double xorsat_core_fixed_point(int k, double alpha);

/// α = 1 / (1 - p). Throws std::invalid_argument for p >= 1 or p < 0.
double contradiction_line(double p);

}  // namespace rcsp
