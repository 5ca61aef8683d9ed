#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

struct TrajectoryPoint {
  std::uint64_t T = 0;
  std::uint64_t E = 0;
};

struct WalkTrajectory {
  std::size_t m = 0;  // number of clauses, for the reduced view
  std::vector<TrajectoryPoint> samples;

  double t(std::size_t i) const { return m ? double(samples[i].T) / double(m) : 0.0; }
  double phi(std::size_t i) const { return m ? double(samples[i].E) / double(m) : 0.0; }
};

enum class WalkStatus { solution, undetermined };

struct WalkOutcome {
  WalkStatus status = WalkStatus::undetermined;
  Assignment assignment;  // the solution, or the final state
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
  WalkTrajectory trajectory;
};

enum class FocusHeuristic { uniform, greedy_zero_break, record_tolerance };
FocusHeuristic parse_focus_heuristic(const std::string& s);

struct WalkOptions {
  /// Starting assignment; drawn uniformly when absent.
  std::optional<Assignment> initial;
  /// Trajectory stride; 0 selects max(1, M/1000).
  std::uint64_t stride = 0;
  bool record = true;
  /// Recount the energy from scratch every this many steps and throw
  /// std::logic_error on mismatch; 0 disables the check.
  std::uint64_t audit_every = 0;
};

/// Pure random walk: flip a uniform variable of a uniform UNSAT clause.
WalkOutcome prwsat(const CnfFormula& f, std::uint64_t t_max, RngSeed seed, const WalkOptions& opt = {});

/// Restarted walk with T_max = 3n steps per restart.
WalkOutcome schoening(const CnfFormula& f, std::uint64_t max_restarts, RngSeed seed,
                      const WalkOptions& opt = {});

struct FocusParams {
  FocusHeuristic heuristic = FocusHeuristic::uniform;
  double noise = 0.5;
  double tolerance = 0.0;  // record_tolerance only, in clauses
};

WalkOutcome focused_walk(const CnfFormula& f, const FocusParams& params, std::uint64_t t_max, RngSeed seed,
                         const WalkOptions& opt = {});

struct PlateauEstimate {
  double phi_as = 0.0;
  double stderr_ = 0.0;
  std::size_t runs_used = 0;
  std::size_t solved_runs = 0;  // excluded: found a solution before t_measure
  double reference = 0.0;       // (2^k - 1)/k
  std::vector<double> per_run;
};

/// Time average of φ = E/M over reduced times [t_burn, t_measure] of a
/// PRWSAT run on each formula, averaged over runs.
PlateauEstimate plateau_estimate(const std::vector<CnfFormula>& formulas, double t_burn, double t_measure,
                                 RngSeed seed);

struct PlateauScanPoint {
  double alpha = 0.0;
  PlateauEstimate estimate;
};

/// α at which the plateau vanishes. A scan point counts as vanished when
/// most runs solve or φ_as <= floor. alpha_rw is the midpoint between the
/// last vanished point and the first point with a plateau; `linear_alpha`
/// extrapolates a least-squares line through the plateau points to φ = 0.
struct VanishingFit {
  double alpha_rw = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double linear_alpha = 0.0;
  double slope = 0.0;
  std::size_t points = 0;
};
VanishingFit plateau_vanishing_point(const std::vector<PlateauScanPoint>& scan, double floor = 1e-4);

}  // namespace rcsp
