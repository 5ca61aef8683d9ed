#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcsp/factor_graph.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

enum class UpdateOrder { random_permutation, fixed };

struct MpParams {
  int max_sweeps = 1000;
  double epsilon = 1e-7;
  double damping = 0.5;
  UpdateOrder order = UpdateOrder::random_permutation;
  RngSeed seed{};
};

/// Messages are indexed by edge id of the factor graph.
struct BpMessages {
  std::vector<double> h;  // variable -> clause
  std::vector<double> u;  // clause -> variable, >= 0
};

struct BpResult {
  bool converged = false;
  int sweeps = 0;
  BpMessages messages;
  std::vector<double> fields;     // h_i
  std::vector<double> marginals;  // P(σ_i = +1)
  double log_z = 0.0;             // Bethe estimate of ln(#solutions)
  double entropy = 0.0;           // log_z / N
};

/// Caps applied before the logarithm of the clause update.
inline constexpr double kBpFieldCap = 30.0;
inline constexpr double kBpProductCap = 1.0 - 1e-15;

/// Warm start values (edge-indexed u) may be passed in `init_u`.
BpResult bp_run(const FactorGraph& fg, const MpParams& params, const std::vector<double>* init_u = nullptr);

struct WpMessages {
  std::vector<int> h_hat;          // variable -> clause
  std::vector<std::uint8_t> u_hat;  // clause -> variable
};

struct WpResult {
  bool converged = false;
  int sweeps = 0;
  WpMessages messages;
  std::vector<int> fields;  // ĥ_i = Σ_a sign_a û_{a→i}
  bool contradiction = false;
  std::vector<int> contradicted;  // variables warned towards both values
};

/// Integer warning propagation; converged when a full sweep changes nothing.
/// `init_u` overrides the all-zero initial warnings.
WpResult wp_run(const FactorGraph& fg, const MpParams& params, const std::vector<std::uint8_t>* init_u = nullptr);

struct SpMessages {
  std::vector<double> delta;  // clause -> variable
  std::vector<double> gamma;  // variable -> clause
};

struct BiasTriplet {
  double plus = 0.0;
  double minus = 0.0;
  double zero = 1.0;
};

enum class SpInit { random_uniform, zero };

struct SpResult {
  bool converged = false;
  int sweeps = 0;
  SpMessages messages;
  std::vector<BiasTriplet> biases;
  bool contradiction = false;  // some variable had π+ = π- = 0
  std::size_t contradiction_events = 0;
  double max_delta = 0.0;
  /// Fraction of edges with δ above nontrivial_cutoff(epsilon).
  double nontrivial_fraction = 0.0;
};

/// Surveys stop within about ε of the trivial fixed point, so a δ counts as
/// nontrivial only above max(1e-6, 10ε).
inline double nontrivial_cutoff(double epsilon) { return std::max(1e-6, 10.0 * epsilon); }

/// `init_delta` (edge-indexed) overrides `init` when given.
SpResult sp_run(const FactorGraph& fg, const MpParams& params, SpInit init = SpInit::random_uniform,
                const std::vector<double>* init_delta = nullptr);

}  // namespace rcsp
