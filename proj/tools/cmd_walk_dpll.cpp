#include <cmath>
#include <memory>

#include "common.hpp"
#include "rcsp/dpll.hpp"
#include "rcsp/local_search.hpp"

namespace rcsp::cli {

namespace {

struct WalkState {
  InstanceOptions inst;
  std::string solver = "prwsat";
  std::string heuristic = "greedy_zero_break";
  double noise = 0.5;
  double tolerance = 0.0;
  double t_max = 1000.0;  // in units of M
  std::uint64_t restarts = 1000;
  std::uint64_t walk_seed = 1;
  std::string trajectory;
  std::vector<double> plateau_grid;
  int runs = 4;
  double t_burn = 20.0, t_measure = 60.0;
};

json outcome_json(const WalkOutcome& w, std::size_t m) {
  return {{"status", w.status == WalkStatus::solution ? "solution" : "undetermined"},
          {"steps", w.steps},
          {"t", m ? double(w.steps) / double(m) : 0.0},
          {"restarts", w.restarts},
          {"trajectory_points", w.trajectory.samples.size()}};
}

}  // namespace

void register_walk(CLI::App& app) {
  auto st = std::make_shared<WalkState>();
  CLI::App* cmd = app.add_subcommand("walk", "Local search on a CNF instance");
  st->inst.add(cmd);
  cmd->add_option("--solver", st->solver, "prwsat, schoening or focused");
  cmd->add_option("--heuristic", st->heuristic, "focused: uniform, greedy_zero_break, record_tolerance");
  cmd->add_option("--noise", st->noise, "focused noise in [0,1]");
  cmd->add_option("--tolerance", st->tolerance, "record_tolerance slack in clauses");
  cmd->add_option("--t-max", st->t_max, "step budget in units of M");
  cmd->add_option("--restarts", st->restarts, "schoening restarts");
  cmd->add_option("--walk-seed", st->walk_seed, "seed of the walk");
  cmd->add_option("--trajectory", st->trajectory, "CSV file for T,t,E,phi");
  cmd->add_option("--plateau-scan", st->plateau_grid, "alpha grid: estimate the plateau and its vanishing point");
  cmd->add_option("--runs", st->runs, "plateau scan: formulas per alpha");
  cmd->add_option("--t-burn", st->t_burn, "plateau scan: window start (units of M)");
  cmd->add_option("--t-measure", st->t_measure, "plateau scan: window end (units of M)");
  cmd->callback([st] {
    if (!st->plateau_grid.empty()) {
      std::vector<PlateauScanPoint> scan;
      json pts = json::array();
      for (std::size_t j = 0; j < st->plateau_grid.size(); ++j) {
        const double a = st->plateau_grid[j];
        std::vector<CnfFormula> fs;
        for (int r = 0; r < st->runs; ++r) {
          EnsembleSpec s = st->inst.spec();
          s.alpha = a;
          s.seed = RngSeed{st->inst.seed, j * 1000003ULL + static_cast<std::uint64_t>(r)};
          fs.push_back(gen_formula(s).cnf());
        }
        const PlateauEstimate e = plateau_estimate(fs, st->t_burn, st->t_measure, RngSeed{st->walk_seed, j});
        scan.push_back({a, e});
        pts.push_back({{"alpha", a},
                       {"phi_as", e.phi_as},
                       {"stderr", e.stderr_},
                       {"runs_used", e.runs_used},
                       {"solved_runs", e.solved_runs},
                       {"reference", e.reference}});
      }
      const VanishingFit v = plateau_vanishing_point(scan);
      emit({{"instance", st->inst.describe()},
            {"points", pts},
            {"alpha_rw", v.alpha_rw},
            {"bracket", {v.bracket_lo, v.bracket_hi}},
            {"linear_alpha", v.linear_alpha}});
      return;
    }
    const GeneratedInstance g = st->inst.load();
    if (!g.is_cnf()) throw std::invalid_argument("walk needs a CNF instance");
    const CnfFormula& f = g.cnf();
    const std::size_t m = f.clauses.size();
    const auto budget = static_cast<std::uint64_t>(std::llround(st->t_max * double(m)));
    WalkOptions o;
    o.record = !st->trajectory.empty();
    WalkOutcome w;
    const RngSeed seed{st->walk_seed, 0};
    if (st->solver == "prwsat") w = prwsat(f, budget, seed, o);
    else if (st->solver == "schoening") w = schoening(f, st->restarts, seed, o);
    else if (st->solver == "focused")
      w = focused_walk(f, {parse_focus_heuristic(st->heuristic), st->noise, st->tolerance}, budget, seed, o);
    else throw std::invalid_argument("unknown solver: " + st->solver);
    if (!st->trajectory.empty()) {
      std::ofstream out = open_out(st->trajectory);
      out << "T,t,E,phi\n";
      for (std::size_t i = 0; i < w.trajectory.samples.size(); ++i)
        out << w.trajectory.samples[i].T << ',' << w.trajectory.t(i) << ',' << w.trajectory.samples[i].E << ','
            << w.trajectory.phi(i) << '\n';
    }
    emit({{"instance", st->inst.describe()}, {"solver", st->solver}, {"outcome", outcome_json(w, m)}});
  });
}

namespace {

struct DpllState {
  InstanceOptions inst;
  std::string heuristic = "guc";
  bool complete = false;
  int samples = 1;
  std::uint64_t budget = 100000000;
  std::uint64_t search_seed = 1;
  std::string trajectory;
  std::vector<int> tau_sizes;
};

json stats_json(const TreeStats& s) {
  return {{"outcome", to_string(s.outcome)},
          {"splits", s.splits},
          {"up_steps", s.up_steps},
          {"contradictions", s.contradictions},
          {"backtracks", s.backtracks},
          {"t_G", s.t_G}};
}

}  // namespace

void register_dpll(CLI::App& app) {
  auto st = std::make_shared<DpllState>();
  CLI::App* cmd = app.add_subcommand("dpll", "Splitting search: single descent or complete DPLL");
  st->inst.add(cmd);
  cmd->add_option("--heuristic", st->heuristic, "uc or guc");
  cmd->add_flag("--complete", st->complete, "backtracking search instead of a single descent");
  cmd->add_option("--samples", st->samples, "instances (consecutive generator seeds)");
  cmd->add_option("--budget", st->budget, "node budget of the complete search");
  cmd->add_option("--search-seed", st->search_seed, "seed of the heuristic choices");
  cmd->add_option("--trajectory", st->trajectory, "CSV file for t,p,alpha of the single descent");
  cmd->add_option("--tau-sizes", st->tau_sizes, "fit the tree-size exponent over these N");
  cmd->callback([st] {
    const SplitHeuristic h = parse_split_heuristic(st->heuristic);
    if (!st->tau_sizes.empty()) {
      const TauFit t = tree_size_exponent(st->inst.k, st->inst.alpha, st->tau_sizes, st->samples, h,
                                          RngSeed{st->inst.seed, 0}, st->budget);
      emit({{"k", st->inst.k},
            {"alpha", st->inst.alpha},
            {"tau", t.tau},
            {"tau_stderr", t.tau_stderr},
            {"sizes", t.sizes},
            {"median_splits", t.median_splits},
            {"budget_hits", t.budget_hits}});
      return;
    }
    std::ofstream traj;
    if (!st->trajectory.empty()) {
      traj = open_out(st->trajectory);
      traj << "sample,t,p,alpha,c1,c2,c3\n";
    }
    json runs = json::array();
    std::size_t successes = 0;
    for (int s = 0; s < st->samples; ++s) {
      InstanceOptions io = st->inst;
      io.seed = st->inst.seed + static_cast<std::uint64_t>(s);
      const GeneratedInstance g = io.load();
      if (!g.is_cnf()) throw std::invalid_argument("dpll needs a CNF instance");
      const RngSeed seed{st->search_seed, static_cast<std::uint64_t>(s)};
      if (st->complete) {
        const DpllResult r = dpll_complete(g.cnf(), h, seed, st->budget);
        successes += r.stats.outcome == DpllOutcome::sat;
        runs.push_back({{"seed", io.seed}, {"stats", stats_json(r.stats)}});
      } else {
        NoBacktrackOptions o;
        o.record = !st->trajectory.empty();
        const NoBacktrackResult r = run_no_backtrack(g.cnf(), h, seed, o);
        successes += r.success;
        for (const auto& p : r.trajectory)
          traj << s << ',' << p.t << ',' << p.p << ',' << p.alpha << ',' << p.c1 << ',' << p.c2 << ',' << p.c3 << '\n';
        runs.push_back({{"seed", io.seed},
                        {"success", r.success},
                        {"free_choices", r.free_choices},
                        {"failure_T", r.failure_T}});
      }
    }
    emit({{"instance", st->inst.describe()},
          {"heuristic", st->heuristic},
          {"complete", st->complete},
          {"samples", st->samples},
          {"successes", successes},
          {"runs", runs}});
  });
}

}  // namespace rcsp::cli
