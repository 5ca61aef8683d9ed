// Acceptance criteria 1-13. Usage: rcsp_acceptance [criterion ...]
// Prints one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rcsp/analytic.hpp"
#include "rcsp/decimation.hpp"
#include "rcsp/dpll.hpp"
#include "rcsp/factor_graph.hpp"
#include "rcsp/fss.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/gf2.hpp"
#include "rcsp/harness.hpp"
#include "rcsp/local_search.hpp"
#include "rcsp/message_passing.hpp"
#include "rcsp/population.hpp"
#include "rcsp/stats.hpp"
#include "rcsp/xorsat.hpp"

using namespace rcsp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. Cover probability.
constexpr double kC1MonteCarloTol = 0.01;
constexpr int kC1Samples = 100000;

void criterion1(Outcome& o) {
  o.check(cover_probability(2, 3) == 0.75, "cover(2,3)=" + fmt("%.17g", cover_probability(2, 3)));
  Rng rng(RngSeed{101, 0});
  int hits = 0;
  for (int s = 0; s < kC1Samples; ++s) {
    double th[3];
    for (double& t : th) t = 2.0 * std::numbers::pi * rng.uniform();
    std::sort(th, th + 3);
    const double gap = std::max({th[1] - th[0], th[2] - th[1], 2.0 * std::numbers::pi - (th[2] - th[0])});
    hits += gap > std::numbers::pi;
  }
  const double p = double(hits) / kC1Samples;
  o.check(std::abs(p - 0.75) <= kC1MonteCarloTol, "monte_carlo=" + fmt("%.4f", p));
}

// 2. Perceptron RS threshold.
constexpr double kC2Target = 0.833, kC2Tol = 0.005;

void criterion2(Outcome& o) {
  const double a = perceptron_threshold();
  o.check(std::abs(a - kC2Target) <= kC2Tol, "alpha_s=" + fmt("%.6f", a));
}

// 3. Second moment exceeds the square of the first.
constexpr double kC3Margin = 1e-6;

void criterion3(Outcome& o) {
  for (double a : {0.1, 0.5, 0.8}) {
    const double gap = second_moment_exponent(a).g2 - 2.0 * annealed_exponent(a);
    o.check(gap > kC3Margin, "alpha=" + fmt("%.1f", a) + " G2-2G1=" + fmt("%.3e", gap));
  }
}

// 4. XORSAT exactness against enumeration.
constexpr int kC4Instances = 1000;
constexpr int kC4MaxN = 22;

void criterion4(Outcome& o) {
  Rng rng(RngSeed{404, 0});
  int count_mismatch = 0, identity_fail = 0, nint_fail = 0, sat = 0;
  for (int t = 0; t < kC4Instances; ++t) {
    const int n = 4 + static_cast<int>(rng.below(kC4MaxN - 3));
    const int k = 2 + static_cast<int>(rng.below(2));
    const double alpha = 0.3 + 0.9 * rng.uniform();
    const XorFormula xf = test::small_random_xor(rng, n, k, constraint_count(alpha, n));
    const test::Enumeration e = test::enumerate(xf, true);
    const Gf2Result g = gf2_solve(xf);
    const std::uint64_t predicted = g.satisfiable ? (std::uint64_t{1} << g.nullity) : 0;
    if (predicted != e.count) ++count_mismatch;
    const CoreDecomposition dec = leaf_removal(xf);
    std::optional<EntropySplit> split;
    try {
      split = entropy_decomposition(xf, dec);
    } catch (const std::logic_error&) {
      ++identity_fail;
      continue;
    }
    if (split.has_value() != (e.count > 0)) {
      ++identity_fail;
      continue;
    }
    if (!split) continue;
    ++sat;
    if (split->total_log2 != split->sigma_log2 + split->internal_log2 ||
        (std::uint64_t{1} << split->total_log2) != e.count)
      ++identity_fail;
    // Group solutions by their restriction to the core variables.
    std::vector<int> core_vars;
    for (const auto& eq : dec.core.equations) core_vars.insert(core_vars.end(), eq.vars.begin(), eq.vars.end());
    std::sort(core_vars.begin(), core_vars.end());
    core_vars.erase(std::unique(core_vars.begin(), core_vars.end()), core_vars.end());
    std::map<std::uint64_t, std::uint64_t> per_cluster;
    for (std::uint64_t x : e.solutions) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < core_vars.size(); ++j) key |= ((x >> core_vars[j]) & 1U) << j;
      ++per_cluster[key];
    }
    bool ok = per_cluster.size() == (std::uint64_t{1} << split->sigma_log2);
    for (const auto& [key, cnt] : per_cluster) {
      ok = ok && cnt == (std::uint64_t{1} << split->internal_log2);
      Assignment core_sol(n, 1);
      for (std::size_t j = 0; j < core_vars.size(); ++j) core_sol[core_vars[j]] = ((key >> j) & 1U) ? 1 : -1;
      Rng r2(405, key);
      const Reconstruction rec = reconstruct_solution(xf, dec, core_sol, r2);
      ok = ok && rec.internal_log2 == split->internal_log2 && energy(xf, rec.solution) == 0;
      for (std::size_t j = 0; j < core_vars.size(); ++j) ok = ok && rec.solution[core_vars[j]] == core_sol[core_vars[j]];
    }
    if (!ok) ++nint_fail;
  }
  o.check(count_mismatch == 0, "count_mismatches=" + std::to_string(count_mismatch));
  o.check(identity_fail == 0, "identity_failures=" + std::to_string(identity_fail));
  o.check(nint_fail == 0, "n_int_failures=" + std::to_string(nint_fail));
  o.detail << "satisfiable=" << sat << "/" << kC4Instances << "; ";
}

// 5. XORSAT clustering and satisfiability thresholds.
constexpr double kC5CoreTol = 0.02;
constexpr int kC5CoreN = 10000;
constexpr int kC5CoreSamples = 40;
constexpr double kC5CrossingTarget = 0.917, kC5CrossingTol = 0.01;
constexpr int kC5CrossingSamples = 400;

void criterion5(Outcome& o) {
  const double ad = xorsat_clustering_threshold(3);
  o.check(ad > 0.81 && ad < 0.83, "alpha_d=" + fmt("%.6f", ad));
  std::vector<double> grid, empty_core;
  for (double a = 0.78; a <= 0.8601; a += 0.0025) {
    int with_core = 0;
    for (int s = 0; s < kC5CoreSamples; ++s) {
      const EnsembleSpec spec{EnsembleKind::xorsat, kC5CoreN, 3, a, 1.0, RngSeed{505, grid.size() * 1000 + s}};
      with_core += leaf_removal(gen_formula(spec).xorf()).core_vars > 0;
    }
    grid.push_back(a);
    empty_core.push_back(1.0 - double(with_core) / kC5CoreSamples);
  }
  const double mid = level_crossing(grid, isotonic_nonincreasing(empty_core, std::vector<double>(grid.size(), 1.0)), 0.5);
  o.check(std::abs(mid - ad) <= kC5CoreTol, "core_midpoint=" + fmt("%.4f", mid));

  ExperimentConfig c;
  c.decider = Decider::gf2;
  c.ensemble.kind = EnsembleKind::xorsat;
  c.ensemble.k = 3;
  c.sizes = {500, 1000, 2000};
  for (int j = 0; j <= 24; ++j) c.alphas.push_back(0.86 + 0.005 * j);
  c.samples = kC5CrossingSamples;
  c.base_seed = 7;
  const FssFit fit = fss_fit(psat_curve(c));
  o.check(std::abs(fit.alpha_c - kC5CrossingTarget) <= kC5CrossingTol,
          "psat_crossing=" + fmt("%.4f", fit.alpha_c) + "+-" + fmt("%.4f", fit.alpha_c_err));
}

// 6. Pure random walk.
constexpr int kC6N = 10000;
constexpr double kC6LinearT = 10.0;  // budget in units of M at alpha = 2
constexpr int kC6Runs = 10;
constexpr double kC6RwTarget = 2.7, kC6RwTol = 0.1;
constexpr int kC6TwoSatN = 1000;
constexpr double kC6TwoSatC = 1.0;  // budget c·N²
constexpr int kC6TwoSatRuns = 20;
constexpr double kC6TwoSatAlpha = 0.95;

void criterion6(Outcome& o) {
  int solved = 0;
  double worst_t = 0.0;
  for (int r = 0; r < kC6Runs; ++r) {
    const CnfFormula f = gen_formula({EnsembleKind::ksat, kC6N, 3, 2.0, 1.0, RngSeed{606, std::uint64_t(r)}}).cnf();
    WalkOptions wo;
    wo.record = false;
    const auto budget = static_cast<std::uint64_t>(kC6LinearT * f.num_clauses());
    const WalkOutcome w = prwsat(f, budget, RngSeed{607, std::uint64_t(r)}, wo);
    solved += w.status == WalkStatus::solution;
    worst_t = std::max(worst_t, double(w.steps) / f.num_clauses());
  }
  o.check(solved == kC6Runs, "alpha2_solved=" + std::to_string(solved) + " worst_t=" + fmt("%.2f", worst_t));

  std::vector<PlateauScanPoint> scan;
  for (int j = 0; j <= 10; ++j) {
    const double a = 2.5 + 0.05 * j;
    std::vector<CnfFormula> fs;
    for (int r = 0; r < 4; ++r)
      fs.push_back(gen_formula({EnsembleKind::ksat, kC6N, 3, a, 1.0, RngSeed{608, std::uint64_t(j * 100 + r)}}).cnf());
    scan.push_back({a, plateau_estimate(fs, 20.0, 60.0, RngSeed{609, std::uint64_t(j)})});
  }
  const PlateauEstimate& at3 = scan.back().estimate;
  o.check(at3.phi_as > 3.0 * at3.stderr_ && at3.phi_as > 0.0 && at3.solved_runs == 0,
          "plateau_alpha3=" + fmt("%.5f", at3.phi_as));
  const VanishingFit v = plateau_vanishing_point(scan);
  o.check(std::abs(v.alpha_rw - kC6RwTarget) <= kC6RwTol, "alpha_rw=" + fmt("%.3f", v.alpha_rw));

  int two_solved = 0, two_sat = 0;
  double worst_c = 0.0;
  for (int r = 0; two_sat < kC6TwoSatRuns; ++r) {
    const CnfFormula f = gen_formula({EnsembleKind::ksat, kC6TwoSatN, 2, kC6TwoSatAlpha, 1.0, RngSeed{610, std::uint64_t(r)}}).cnf();
    if (!two_sat_solve(f)) continue;
    ++two_sat;
    WalkOptions wo;
    wo.record = false;
    const double n2 = double(kC6TwoSatN) * kC6TwoSatN;
    const WalkOutcome w = prwsat(f, static_cast<std::uint64_t>(kC6TwoSatC * n2), RngSeed{611, std::uint64_t(r)}, wo);
    two_solved += w.status == WalkStatus::solution;
    worst_c = std::max(worst_c, double(w.steps) / n2);
  }
  o.check(two_solved == two_sat, "two_sat_solved=" + std::to_string(two_solved) + "/" + std::to_string(two_sat) +
                                     " worst_steps/N2=" + fmt("%.4f", worst_c));
}

// 7. Unit-clause and generalized unit-clause search.
constexpr int kC7N = 10000;
constexpr int kC7Samples = 2000;
constexpr double kC7Tol = 0.05;
// Vanished: empirical rate within kC7Tol of zero. Succeeding: Wilson lower bound above kC7Tol.

std::size_t successes(double alpha, SplitHeuristic h, int samples, std::uint64_t tag) {
  std::size_t ok = 0;
  NoBacktrackOptions nb;
  nb.record = false;
  for (int s = 0; s < samples; ++s) {
    const CnfFormula f = gen_formula({EnsembleKind::ksat, kC7N, 3, alpha, 1.0, RngSeed{tag, std::uint64_t(s)}}).cnf();
    ok += run_no_backtrack(f, h, RngSeed{tag + 1, std::uint64_t(s)}, nb).success;
  }
  return ok;
}

double success_rate(double alpha, SplitHeuristic h, int samples, std::uint64_t tag) {
  return double(successes(alpha, h, samples, tag)) / samples;
}

void criterion7(Outcome& o) {
  std::uint64_t tag = 700;
  for (double a : {1.0, 2.0, 2.5}) {
    const double emp = success_rate(a, SplitHeuristic::uc, kC7Samples, tag += 2);
    const double th = p_success_uc(a);
    o.check(std::abs(emp - th) <= kC7Tol, "uc alpha=" + fmt("%.1f", a) + " emp=" + fmt("%.3f", emp) + " th=" + fmt("%.3f", th));
  }
  const double v = success_rate(8.0 / 3.0, SplitHeuristic::uc, kC7Samples, tag += 2);
  o.check(v <= kC7Tol, "uc alpha=8/3 emp=" + fmt("%.3f", v));
  const std::size_t g29 = successes(2.9, SplitHeuristic::guc, kC7Samples, tag += 2);
  const Interval ci = wilson_interval(g29, kC7Samples);
  o.check(ci.lo > kC7Tol, "guc alpha=2.9 emp=" + fmt("%.3f", double(g29) / kC7Samples) + " ci_lo=" + fmt("%.3f", ci.lo));
  const double g31 = success_rate(3.1, SplitHeuristic::guc, kC7Samples, tag += 2);
  o.check(g31 <= kC7Tol, "guc alpha=3.1 emp=" + fmt("%.3f", g31));
}

// 8. Complete DPLL.
constexpr int kC8Formulas = 10000;
constexpr int kC8TauSamples = 100;

void criterion8(Outcome& o) {
  Rng rng(RngSeed{808, 0});
  int mismatch = 0, bad_model = 0;
  for (int t = 0; t < kC8Formulas; ++t) {
    const int n = 5 + static_cast<int>(rng.below(16));
    const double alpha = 2.0 + 5.0 * rng.uniform();
    const CnfFormula f = test::small_random_cnf(rng, n, 3, constraint_count(alpha, n));
    const bool truth = test::enumerate(f).count > 0;
    const SplitHeuristic h = t % 2 ? SplitHeuristic::uc : SplitHeuristic::guc;
    const DpllResult r = dpll_complete(f, h, RngSeed{809, std::uint64_t(t)}, 100000000);
    if ((r.stats.outcome == DpllOutcome::sat) != truth || r.stats.outcome == DpllOutcome::budget) ++mismatch;
    if (r.stats.outcome == DpllOutcome::sat && energy(f, r.assignment) != 0) ++bad_model;
  }
  o.check(mismatch == 0 && bad_model == 0,
          "verdict_mismatches=" + std::to_string(mismatch) + " bad_models=" + std::to_string(bad_model));
  const TauFit t6 = tree_size_exponent(3, 6.0, {50, 75, 100}, kC8TauSamples, SplitHeuristic::guc, RngSeed{810, 0});
  const TauFit t10 = tree_size_exponent(3, 10.0, {50, 75, 100}, kC8TauSamples, SplitHeuristic::guc, RngSeed{811, 0});
  o.check(t6.tau > 0.0 && t10.tau > 0.0 && t10.tau < t6.tau,
          "tau6=" + fmt("%.4f", t6.tau) + " tau10=" + fmt("%.4f", t10.tau));
}

// 9. BP is exact on trees.
constexpr int kC9Trees = 1000;
constexpr double kC9Tol = 1e-10;

MpParams exact_params(std::uint64_t seed) {
  MpParams p;
  p.damping = 0.0;
  p.epsilon = 1e-14;
  p.max_sweeps = 500;
  p.seed = RngSeed{seed, 0};
  return p;
}

void criterion9(Outcome& o) {
  Rng rng(RngSeed{909, 0});
  double worst_marg = 0.0, worst_s = 0.0;
  int unconverged = 0;
  for (int t = 0; t < kC9Trees; ++t) {
    const int n = 2 + static_cast<int>(rng.below(19));
    const CnfFormula f = test::random_tree_formula(rng, n, 2, 4);
    const test::Enumeration e = test::enumerate(f);
    const BpResult r = bp_run(FactorGraph(f), exact_params(910 + t));
    unconverged += !r.converged;
    for (int i = 0; i < f.n_vars; ++i)
      worst_marg = std::max(worst_marg, std::abs(r.marginals[i] - double(e.true_counts[i]) / e.count));
    worst_s = std::max(worst_s, std::abs(r.entropy - std::log(double(e.count)) / f.n_vars));
  }
  o.check(unconverged == 0, "unconverged=" + std::to_string(unconverged));
  o.check(worst_marg <= kC9Tol, "max_marginal_error=" + fmt("%.2e", worst_marg));
  o.check(worst_s <= kC9Tol, "max_entropy_error=" + fmt("%.2e", worst_s));
}

// 10. Warning propagation forces what unit propagation forces on trees.
constexpr int kC10Trees = 1000;

void criterion10(Outcome& o) {
  Rng rng(RngSeed{1010, 0});
  int mismatch = 0, contradictions = 0, forcing = 0;
  for (int t = 0; t < kC10Trees; ++t) {
    const int n = 2 + static_cast<int>(rng.below(39));
    const CnfFormula f = test::random_tree_formula(rng, n, 1, 5);
    const auto up = test::naive_unit_propagation(f);
    const WpResult w = wp_run(FactorGraph(f), exact_params(1011 + t));
    if (!w.converged) {
      ++mismatch;
      continue;
    }
    if (!up) {
      ++contradictions;
      mismatch += !w.contradiction;
      continue;
    }
    bool same = !w.contradiction;
    bool any = false;
    for (int i = 0; i < f.n_vars; ++i) {
      const int wp_spin = w.fields[i] > 0 ? 1 : (w.fields[i] < 0 ? -1 : 0);
      same = same && wp_spin == (*up)[i];
      any = any || (*up)[i] != 0;
    }
    forcing += any;
    mismatch += !same;
  }
  o.check(mismatch == 0, "mismatches=" + std::to_string(mismatch));
  o.detail << "contradictory=" << contradictions << " forcing=" << forcing << "; ";
}

// 11. Survey propagation onset and decimation.
constexpr double kC11Target = 3.86, kC11Tol = 0.15;
constexpr int kC11ScanN = 20000;
constexpr int kC11DecN = 50000;
constexpr int kC11DecRuns = 20;
constexpr double kC11SolveRate = 0.9;

void criterion11(Outcome& o) {
  std::vector<double> grid;
  for (int j = 0; j <= 10; ++j) grid.push_back(3.6 + 0.05 * j);
  MpParams mp;
  mp.epsilon = 1e-3;
  mp.seed = RngSeed{1101, 0};
  const SpOnsetScan scan = sp_onset_scan(3, kC11ScanN, grid, RngSeed{1102, 0}, mp);
  o.check(std::abs(scan.alpha_d - kC11Target) <= kC11Tol, "instance_onset=" + fmt("%.3f", scan.alpha_d));

  SpPopulationParams pp;
  pp.size = 10000;
  pp.sweeps = 200;
  pp.seeds = 3;
  const SpOnsetEstimate pop = sp_population_onset(3, grid, pp, RngSeed{1103, 0});
  o.check(pop.found && std::abs(pop.alpha_d - kC11Target) <= kC11Tol, "population_onset=" + fmt("%.3f", pop.alpha_d));

  int solved = 0;
  for (int r = 0; r < kC11DecRuns; ++r) {
    const CnfFormula f = gen_formula({EnsembleKind::ksat, kC11DecN, 3, 4.2, 1.0, RngSeed{1104, std::uint64_t(r)}}).cnf();
    DecimateParams dp;
    dp.block_fraction = 0.01;
    dp.mp.epsilon = 1e-3;
    dp.log_steps = false;
    dp.seed = RngSeed{1105, std::uint64_t(r)};
    const DecimateResult d = mp_decimate(f, dp);
    solved += d.sat() && energy(f, d.assignment) == 0;
  }
  o.check(solved >= kC11SolveRate * kC11DecRuns, "decimation_solved=" + std::to_string(solved) + "/" +
                                                    std::to_string(kC11DecRuns));
}

// 12. Warning propagation on planted instances.
constexpr int kC12N = 10000;
constexpr int kC12Runs = 20;
constexpr double kC12ConvergedRate = 0.95;
constexpr double kC12WorkPerVar = 10.0;  // residual work at most this times N

void criterion12(Outcome& o) {
  const double bound = 5.0 * std::log(double(kC12N));
  int fast = 0, wrong = 0, solved = 0, linear = 0, max_sweeps = 0;
  std::uint64_t max_work = 0;
  for (int r = 0; r < kC12Runs; ++r) {
    const PlantedWpResult p = planted_wp_experiment(kC12N, 10.0, 3, RngSeed{1201, std::uint64_t(r)});
    fast += p.converged && p.sweeps <= bound;
    max_sweeps = std::max(max_sweeps, p.sweeps);
    wrong += static_cast<int>(p.wrong_sign);
    solved += p.residual_solved;
    linear += p.residual_work <= kC12WorkPerVar * kC12N;
    max_work = std::max(max_work, p.residual_work);
  }
  o.check(fast >= kC12ConvergedRate * kC12Runs,
          "fast_convergence=" + std::to_string(fast) + "/" + std::to_string(kC12Runs) + " max_sweeps=" +
              std::to_string(max_sweeps) + " bound=" + fmt("%.1f", bound));
  o.check(wrong == 0, "wrong_sign=" + std::to_string(wrong));
  o.check(solved == kC12Runs && linear == kC12Runs,
          "residual_solved=" + std::to_string(solved) + " max_work=" + std::to_string(max_work));
}

// 13. Finite-size scaling.
constexpr double kC13SyntheticTol = 0.1;
constexpr double kC13NuLo = 2.5, kC13NuHi = 3.5;
constexpr int kC13Samples = 400;

std::vector<CurvePoint> synthetic_curves(double alpha_c, double nu) {
  std::vector<CurvePoint> pts;
  for (int n : {100, 400, 1600, 6400})
    for (int j = 0; j <= 200; ++j) {
      CurvePoint p;
      p.k = 2;
      p.n = n;
      p.alpha = alpha_c - 1.0 + 0.01 * j;
      p.trials = 1000000;
      p.p_hat = test::logistic_curve(p.alpha, alpha_c, nu, n, 3.0);
      p.successes = static_cast<std::size_t>(std::llround(p.p_hat * p.trials));
      pts.push_back(p);
    }
  return pts;
}

void criterion13(Outcome& o) {
  bool flags_ok = true;
  for (double nu : {1.5, 2.0, 3.0}) {
    const FssFit f = fss_fit(synthetic_curves(1.0, nu));
    flags_ok = flags_ok && f.nu_below_two == (f.nu < 2.0);
    if (nu >= 2.0)
      o.check(f.valid && std::abs(f.nu - nu) <= kC13SyntheticTol,
              "synthetic nu=" + fmt("%.1f", nu) + " fit=" + fmt("%.4f", f.nu));
    else
      o.check(f.nu_below_two, "synthetic nu=1.5 flagged fit=" + fmt("%.4f", f.nu));
  }
  ExperimentConfig c;
  c.decider = Decider::two_sat;
  c.ensemble.k = 2;
  c.sizes = {500, 1000, 2000, 4000};
  for (int j = 0; j <= 80; ++j) c.alphas.push_back(0.70 + 0.01 * j);
  c.samples = kC13Samples;
  c.base_seed = 7;
  const FssFit f = fss_fit(psat_curve(c));
  flags_ok = flags_ok && f.nu_below_two == (f.nu < 2.0);
  o.check(f.valid && f.nu >= kC13NuLo && f.nu <= kC13NuHi,
          "two_sat nu=" + fmt("%.3f", f.nu) + "+-" + fmt("%.3f", f.nu_err) + " alpha_c=" + fmt("%.3f", f.alpha_c));
  o.check(flags_ok, "nu_below_two_flags_consistent");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2,  criterion3,  criterion4, criterion5,
                                                            criterion6, criterion7,  criterion8,  criterion9, criterion10,
                                                            criterion11, criterion12, criterion13};
  std::set<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.insert(std::atoi(argv[i]));
  if (chosen.empty())
    for (int i = 1; i <= 13; ++i) chosen.insert(i);
  bool all = true;
  for (int id : chosen) {
    if (id < 1 || id > 13) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[id - 1](o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  (%s%.1fs)\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), sec);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
