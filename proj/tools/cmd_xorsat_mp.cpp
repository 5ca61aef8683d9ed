#include <cmath>
#include <memory>

#include "common.hpp"
#include "rcsp/decimation.hpp"
#include "rcsp/factor_graph.hpp"
#include "rcsp/gf2.hpp"
#include "rcsp/xorsat.hpp"

namespace rcsp::cli {

namespace {

struct XorState {
  InstanceOptions inst;
  std::size_t samples = 200;
  int bins = 40;
  std::string csv;

  XorState() {
    inst.kind = "xorsat";
    inst.alpha = 0.8;
  }

  XorFormula load() const {
    const GeneratedInstance g = inst.load();
    if (g.is_cnf()) throw std::invalid_argument("xorsat needs an XOR instance");
    return g.xorf();
  }
};

}  // namespace

void register_xorsat(CLI::App& app) {
  auto st = std::make_shared<XorState>();
  CLI::App* cmd = app.add_subcommand("xorsat", "Random XORSAT structure and exact solving");
  cmd->require_subcommand(1);

  CLI::App* core = cmd->add_subcommand("core", "Leaf removal and the 2-core");
  st->inst.add(core);
  core->add_option("--csv", st->csv, "CSV of removal steps (step,equation,leaf,d)");
  core->callback([st] {
    const XorFormula xf = st->load();
    const CoreDecomposition d = leaf_removal(xf);
    if (!st->csv.empty()) {
      std::ofstream out = open_out(st->csv);
      out << "step,equation,leaf,d\n";
      for (std::size_t i = 0; i < d.removed.size(); ++i)
        out << i << ',' << d.removed[i].equation << ',' << d.removed[i].leaf << ',' << d.removed[i].freed.size() << '\n';
    }
    emit({{"instance", st->inst.describe()},
          {"core_equations", d.core_ids.size()},
          {"core_vars", d.core_vars},
          {"removed", d.t_star},
          {"isolated_vars", d.isolated_vars},
          {"core_fraction", xf.n_vars ? double(d.core_vars) / xf.n_vars : 0.0}});
  });

  CLI::App* solve = cmd->add_subcommand("solve", "Gaussian elimination over GF(2)");
  st->inst.add(solve);
  solve->callback([st] {
    const XorFormula xf = st->load();
    const Gf2Result r = gf2_solve(xf);
    json out{{"instance", st->inst.describe()},
             {"satisfiable", r.satisfiable},
             {"rank", r.rank},
             {"nullity", r.nullity}};
    if (r.satisfiable) out["log2_solutions"] = r.nullity;
    emit(out);
  });

  CLI::App* entropy = cmd->add_subcommand("entropy", "Cluster decomposition of the entropy");
  st->inst.add(entropy);
  entropy->callback([st] {
    const XorFormula xf = st->load();
    const auto e = entropy_decomposition(xf);
    if (!e) {
      emit({{"instance", st->inst.describe()}, {"satisfiable", false}});
      return;
    }
    emit({{"instance", st->inst.describe()},
          {"satisfiable", true},
          {"units", "nats per variable"},
          {"s", e->s()},
          {"sigma", e->sigma()},
          {"s_int", e->s_int()},
          {"s_ln2", double(e->total_log2) / xf.n_vars},
          {"total_log2", e->total_log2},
          {"sigma_log2", e->sigma_log2},
          {"internal_log2", e->internal_log2}});
  });

  CLI::App* ov = cmd->add_subcommand("overlaps", "Intra- and inter-cluster overlap histograms");
  st->inst.add(ov);
  ov->add_option("--samples", st->samples, "solution pairs per histogram");
  ov->add_option("--bins", st->bins, "histogram bins on [-1,1]");
  ov->add_option("--csv", st->csv, "CSV histogram (q,intra,inter)");
  ov->callback([st] {
    const XorFormula xf = st->load();
    const OverlapStats o = cluster_overlap_stats(xf, st->samples, RngSeed{st->inst.seed, 7}, st->bins);
    if (!st->csv.empty()) {
      std::ofstream out = open_out(st->csv);
      out << "q,intra,inter\n";
      for (int b = 0; b < o.bins; ++b)
        out << -1.0 + (2.0 * b + 1.0) / o.bins << ',' << o.intra[b] << ',' << o.inter[b] << '\n';
    }
    emit({{"instance", st->inst.describe()},
          {"intra_mean", o.intra_mean},
          {"inter_mean", o.inter_mean},
          {"intra", o.intra},
          {"inter", o.inter}});
  });
}

namespace {

struct MpState {
  InstanceOptions inst;
  std::string guide = "sp";
  bool decimate = false;
  bool planted = false;
  double epsilon = 1e-7;
  double damping = 0.5;
  int max_sweeps = 1000;
  double block = 0.0;
  double trivial = 1e-2;
  int restarts = 0;
  double noise = 0.5;
  std::uint64_t mp_seed = 1;
  std::string marginals;
  std::vector<double> onset_grid;
};

}  // namespace

void register_mp(CLI::App& app) {
  auto st = std::make_shared<MpState>();
  CLI::App* cmd = app.add_subcommand("mp", "Belief, warning and survey propagation");
  st->inst.add(cmd);
  cmd->add_option("--guide", st->guide, "bp, wp or sp");
  cmd->add_flag("--decimate", st->decimate, "guided decimation");
  cmd->add_flag("--planted", st->planted, "planted warning-propagation experiment");
  cmd->add_option("--epsilon", st->epsilon, "convergence threshold");
  cmd->add_option("--damping", st->damping, "damping in [0,1)");
  cmd->add_option("--max-sweeps", st->max_sweeps, "sweep cap");
  cmd->add_option("--block", st->block, "fraction fixed per decimation round (0: one variable)");
  cmd->add_option("--trivial-threshold", st->trivial, "bias gap below which SP hands over to the walk");
  cmd->add_option("--restarts", st->restarts, "decimation restarts after a failure");
  cmd->add_option("--noise", st->noise, "walk fallback noise");
  cmd->add_option("--mp-seed", st->mp_seed, "seed of the message updates");
  cmd->add_option("--marginals", st->marginals, "CSV of per-variable results");
  cmd->add_option("--onset-scan", st->onset_grid, "alpha grid: single-instance survey onset");
  cmd->callback([st] {
    MpParams p;
    p.epsilon = st->epsilon;
    p.damping = st->damping;
    p.max_sweeps = st->max_sweeps;
    p.seed = RngSeed{st->mp_seed, 0};
    if (!st->onset_grid.empty()) {
      const SpOnsetScan s = sp_onset_scan(st->inst.k, st->inst.n, st->onset_grid, RngSeed{st->inst.seed, 0}, p);
      json pts = json::array();
      for (const auto& q : s.points)
        pts.push_back({{"alpha", q.alpha},
                       {"converged", q.converged},
                       {"sweeps", q.sweeps},
                       {"nontrivial_fraction", q.nontrivial_fraction},
                       {"nontrivial", q.nontrivial}});
      emit({{"k", st->inst.k}, {"n", st->inst.n}, {"points", pts}, {"alpha_d", s.alpha_d},
            {"bracket", {s.bracket_lo, s.bracket_hi}}});
      return;
    }
    if (st->planted) {
      PlantedWpParams pp;
      pp.mp = p;
      pp.mp.damping = 0.0;
      pp.walk.noise = st->noise;
      const PlantedWpResult r = planted_wp_experiment(st->inst.n, st->inst.alpha, st->inst.k, RngSeed{st->inst.seed, 0}, pp);
      emit({{"n", r.n},
            {"alpha", r.alpha},
            {"converged", r.converged},
            {"sweeps", r.sweeps},
            {"sweep_bound_5lnN", 5.0 * std::log(double(r.n))},
            {"frozen_fraction", r.frozen_fraction()},
            {"frozen_correct_fraction", r.correct_fraction()},
            {"wrong_sign", r.wrong_sign},
            {"contradiction", r.contradiction},
            {"residual_vars", r.residual_vars},
            {"residual_clauses", r.residual_clauses},
            {"residual_solved", r.residual_solved},
            {"residual_method", r.residual_method},
            {"residual_work", r.residual_work}});
      return;
    }
    const GeneratedInstance g = st->inst.load();
    if (!g.is_cnf()) throw std::invalid_argument("mp needs a CNF instance");
    const CnfFormula& f = g.cnf();
    const Guide guide = parse_guide(st->guide);
    if (st->decimate) {
      DecimateParams d;
      d.guide = guide;
      d.mp = p;
      d.block_fraction = st->block;
      d.trivial_threshold = st->trivial;
      d.restarts = st->restarts;
      d.walk.noise = st->noise;
      d.seed = RngSeed{st->mp_seed, 1};
      const DecimateResult r = mp_decimate(f, d);
      json log = json::array();
      for (const auto& s : r.log)
        log.push_back({{"round", s.round},
                       {"variable", s.var},
                       {"value", s.value},
                       {"gap", s.gap},
                       {"residual_vars", s.residual_vars},
                       {"residual_clauses", s.residual_clauses},
                       {"sweeps", s.sweeps}});
      emit({{"instance", st->inst.describe()},
            {"guide", st->guide},
            {"status", to_string(r.status)},
            {"fail_step", r.fail_step},
            {"rounds", r.rounds},
            {"heuristic_picks", r.heuristic_picks},
            {"used_fallback", r.used_fallback},
            {"walk_steps", r.walk_steps},
            {"attempts", r.attempts},
            {"log", log}});
      return;
    }
    const FactorGraph fg(f);
    std::ofstream csv;
    if (!st->marginals.empty()) csv = open_out(st->marginals);
    json out{{"instance", st->inst.describe()}, {"guide", st->guide}};
    if (guide == Guide::bp) {
      const BpResult r = bp_run(fg, p);
      out.update({{"converged", r.converged}, {"sweeps", r.sweeps}, {"log_z", r.log_z}, {"entropy", r.entropy}});
      if (csv) {
        csv << "var,field,p_plus\n";
        for (int i = 0; i < fg.num_vars(); ++i) csv << i << ',' << r.fields[i] << ',' << r.marginals[i] << '\n';
      }
    } else if (guide == Guide::wp) {
      const WpResult r = wp_run(fg, p);
      std::size_t frozen = 0;
      for (int h : r.fields) frozen += h != 0;
      out.update({{"converged", r.converged},
                  {"sweeps", r.sweeps},
                  {"contradiction", r.contradiction},
                  {"frozen", frozen}});
      if (csv) {
        csv << "var,field\n";
        for (int i = 0; i < fg.num_vars(); ++i) csv << i << ',' << r.fields[i] << '\n';
      }
    } else {
      const SpResult r = sp_run(fg, p);
      out.update({{"converged", r.converged},
                  {"sweeps", r.sweeps},
                  {"contradiction", r.contradiction},
                  {"contradiction_events", r.contradiction_events},
                  {"max_delta", r.max_delta},
                  {"nontrivial_fraction", r.nontrivial_fraction}});
      if (csv) {
        csv << "var,plus,minus,zero\n";
        for (int i = 0; i < fg.num_vars(); ++i)
          csv << i << ',' << r.biases[i].plus << ',' << r.biases[i].minus << ',' << r.biases[i].zero << '\n';
      }
    }
    emit(out);
  });
}

}  // namespace rcsp::cli
