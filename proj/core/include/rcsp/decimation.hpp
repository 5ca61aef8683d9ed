#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/local_search.hpp"
#include "rcsp/message_passing.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

enum class Guide { bp, wp, sp };
Guide parse_guide(const std::string& s);
std::string to_string(Guide g);

struct DecimateParams {
  Guide guide = Guide::sp;
  MpParams mp;
  /// Fraction of the unassigned variables fixed per round; 0 fixes one.
  double block_fraction = 0.0;
  /// SP hands the residual to the walk when the largest |γ+ − γ−| is below this.
  double trivial_threshold = 1e-2;
  /// Reuse messages of surviving edges between rounds.
  bool warm_start = true;
  bool fallback = true;
  FocusParams walk{FocusHeuristic::greedy_zero_break, 0.5, 0.0};
  /// Walk budget in steps per residual clause.
  double walk_steps_per_clause = 1000.0;
  /// Further attempts with fresh streams after a failure.
  int restarts = 0;
  bool log_steps = true;
  RngSeed seed{};
};

struct DecimationStep {
  std::size_t round = 0;
  int var = -1;
  int value = 0;
  double gap = 0.0;  // |h_i|, |ĥ_i| or |γ+ − γ−| of the fixed variable
  std::size_t residual_vars = 0;
  std::size_t residual_clauses = 0;
  int sweeps = 0;
};

enum class DecimateStatus { sat, non_convergence, contradiction, fallback_failed };
std::string to_string(DecimateStatus s);

struct DecimateResult {
  DecimateStatus status = DecimateStatus::contradiction;
  std::size_t fail_step = 0;  // round index of the failure
  Assignment assignment;      // verified when status == sat
  std::vector<DecimationStep> log;
  std::size_t heuristic_picks = 0;
  std::size_t rounds = 0;
  bool used_fallback = false;
  std::uint64_t walk_steps = 0;
  int attempts = 1;

  bool sat() const { return status == DecimateStatus::sat; }
};

/// Guided decimation with unit propagation after every round.
DecimateResult mp_decimate(const CnfFormula& f, const DecimateParams& params);

struct PlantedWpParams {
  MpParams mp{1000, 1e-7, 0.0, UpdateOrder::random_permutation, {}};
  FocusParams walk{FocusHeuristic::greedy_zero_break, 0.5, 0.0};
  double walk_steps_per_clause = 1000.0;
};

struct PlantedWpResult {
  int n = 0;
  double alpha = 0.0;
  bool converged = false;
  int sweeps = 0;
  std::size_t frozen = 0;       // variables with ĥ_i != 0
  std::size_t frozen_correct = 0;
  std::size_t wrong_sign = 0;
  bool contradiction = false;
  double frozen_fraction() const { return n ? double(frozen) / n : 0.0; }
  double correct_fraction() const { return n ? double(frozen_correct) / n : 0.0; }
  /// Residual after fixing the frozen variables.
  std::size_t residual_vars = 0;
  std::size_t residual_clauses = 0;
  bool residual_solved = false;
  std::string residual_method;  // "up", "guc" or "walk"
  std::uint64_t residual_work = 0;  // assignments plus walk flips
  Assignment assignment;
};

/// Planted k-SAT instance; warning propagation started from û = 1 on every
/// edge, then the frozen variables are fixed and the residual solved.
PlantedWpResult planted_wp_experiment(int n, double alpha, int k, RngSeed seed, const PlantedWpParams& params = {});

struct SpOnsetPoint {
  double alpha = 0.0;
  bool converged = false;
  int sweeps = 0;
  double nontrivial_fraction = 0.0;
  bool nontrivial = false;
};

struct SpOnsetScan {
  std::vector<SpOnsetPoint> points;
  double alpha_d = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// A survey fixed point is trivial when at least `trivial_mass` of the edges
/// carry δ <= nontrivial_cutoff(ε); unconverged runs count as nontrivial.
inline constexpr double kTrivialMass = 0.999;

/// SP on one random k-SAT instance per grid point. The onset is the midpoint
/// between the last trivial and the first nontrivial point.
SpOnsetScan sp_onset_scan(int k, int n, const std::vector<double>& alphas, RngSeed seed, const MpParams& params);

}  // namespace rcsp
