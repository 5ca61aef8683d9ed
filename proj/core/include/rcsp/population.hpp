#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcsp/rng.hpp"

namespace rcsp {

enum class PopulationModel { ksat, xorsat };

struct Population {
  std::vector<double> values;
  std::uint64_t generation = 0;  // completed sweeps
};

struct RsPopulationParams {
  PopulationModel model = PopulationModel::ksat;
  std::size_t size = 100000;
  int burn_in = 200;
  int measure = 100;
  /// Entropy samples of each Bethe term per measurement sweep; 0 uses the population size.
  std::size_t samples_per_sweep = 0;
  /// Fields are clamped to this magnitude.
  double field_cap = 30.0;
};

struct RsPopulationResult {
  Population population;  // cavity fields h
  double entropy = 0.0;   // nats per variable
  double stderr_ = 0.0;
  /// Fraction of clamped fields averaged over the measurement sweeps.
  double clamped_fraction = 0.0;
  bool diverged = false;
};

/// Replica-symmetric cavity fields of random k-SAT (or k-XORSAT) as a
/// population; every update draws two Poisson(αk/2) degrees.
RsPopulationResult rs_population(int k, double alpha, const RsPopulationParams& params, RngSeed seed);

/// Cavity field of a variable with `same` and `opposite` clause neighbors
/// sampled from the population, used by tests to probe the update rule.
double rs_field_update(const std::vector<double>& same_u, const std::vector<double>& opposite_u);
/// Clause message from k−1 incoming fields.
double rs_clause_message(const std::vector<double>& fields);

struct SpPopulationParams {
  std::size_t size = 100000;
  int sweeps = 200;
  int seeds = 5;
};

struct SpPopulationPoint {
  double alpha = 0.0;
  int nontrivial_votes = 0;
  int seeds = 0;
  std::vector<double> trivial_mass;  // per seed, mass of δ <= 1e-6
  bool nontrivial() const { return 2 * nontrivial_votes > seeds; }
  bool unanimous() const { return nontrivial_votes == 0 || nontrivial_votes == seeds; }
};

struct SpOnsetEstimate {
  double alpha_d = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool widened = false;  // some point split the seeds
  bool found = false;
  std::vector<SpPopulationPoint> points;
};

/// Surveys δ of random k-SAT as a population started uniform in (0,1). A
/// point is nontrivial when fewer than 0.999 of the surveys are below 1e-6,
/// decided by majority over seeds.
SpPopulationPoint sp_population_point(int k, double alpha, const SpPopulationParams& params, RngSeed seed);
SpOnsetEstimate sp_population_onset(int k, const std::vector<double>& alphas, const SpPopulationParams& params,
                                    RngSeed seed);

}  // namespace rcsp
