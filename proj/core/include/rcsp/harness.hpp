#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcsp/decimation.hpp"
#include "rcsp/dpll.hpp"
#include "rcsp/fss.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

std::string version();

/// dpll and gf2 and two_sat are complete; uc, guc and mp only certify SAT.
enum class Decider { dpll, gf2, two_sat, uc, guc, mp };
Decider parse_decider(const std::string& s);
std::string to_string(Decider d);
bool is_complete(Decider d);

struct DeciderParams {
  std::uint64_t node_budget = 10000000;
  SplitHeuristic split = SplitHeuristic::guc;
  DecimateParams mp;
};

enum class Verdict { sat, unsat, censored };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

/// Heuristic deciders report unsat for "no solution found".
Verdict decide(const GeneratedInstance& inst, Decider d, const DeciderParams& params, RngSeed seed);

struct ExperimentConfig {
  Decider decider = Decider::dpll;
  DeciderParams params;
  EnsembleSpec ensemble;  // n, alpha and seed are filled per job
  std::vector<int> sizes;
  std::vector<double> alphas;
  int samples = 1;
  int workers = 0;  // 0: RCSP_WORKERS, else hardware concurrency
  std::uint64_t base_seed = 1;
  std::string output;  // directory for run_experiment
};

/// JSON round trip; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& c);
/// FNV-1a of the canonical JSON form.
std::uint64_t config_hash(const ExperimentConfig& c);
void validate(const ExperimentConfig& c);

struct Job {
  int n = 0;
  std::size_t alpha_index = 0;
  int index = 0;
};

/// Deterministic job list in (N, α, index) order.
std::vector<Job> expand_jobs(const ExperimentConfig& c);
/// Per-job seed: hash of (base, N, α bits, index).
RngSeed job_seed(std::uint64_t base, int n, double alpha, int index);

struct JobResult {
  int n = 0;
  double alpha = 0.0;
  int index = 0;
  Verdict verdict = Verdict::censored;
};

JobResult run_job(const ExperimentConfig& c, const Job& job);

/// Groups results by (N, α) with Wilson intervals; censored verdicts are
/// counted separately.
std::vector<CurvePoint> aggregate(const ExperimentConfig& c, const std::vector<JobResult>& results);

/// Worker count: positive request, else RCSP_WORKERS, else hardware threads.
int resolve_workers(int requested);

/// Runs every job in memory and aggregates.
std::vector<CurvePoint> psat_curve(const ExperimentConfig& c);

struct ExperimentSummary {
  std::size_t jobs_total = 0;
  std::size_t jobs_run = 0;      // this invocation
  std::size_t jobs_resumed = 0;  // found in the journal
  bool complete = false;
  double wall_seconds = 0.0;
  std::vector<CurvePoint> curves;
};

/// Writes <output>/jobs.csv (append-only journal), and once every job is
/// done results.csv, curves.csv and manifest.json. An existing journal of
/// the same configuration is resumed. `max_new_jobs` stops early.
ExperimentSummary run_experiment(const ExperimentConfig& c, std::optional<std::size_t> max_new_jobs = {});

std::string curves_csv(const std::vector<CurvePoint>& curves);
std::vector<CurvePoint> parse_curves_csv(const std::string& text);

}  // namespace rcsp
