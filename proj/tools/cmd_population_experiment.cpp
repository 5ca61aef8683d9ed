#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "common.hpp"
#include "rcsp/fss.hpp"
#include "rcsp/harness.hpp"
#include "rcsp/population.hpp"

namespace rcsp::cli {

namespace {

struct PopState {
  int k = 3;
  double alpha = 2.0;
  std::vector<double> grid;
  std::size_t size = 100000;
  int burn_in = 200;
  int measure = 100;
  int sweeps = 200;
  int seeds = 5;
  std::string model = "ksat";
  std::uint64_t seed = 1;
  std::string histogram;
  int bins = 60;
};

void write_histogram(const std::string& path, const std::vector<double>& values, double lo, double hi, int bins) {
  std::vector<std::uint64_t> h(bins, 0);
  for (double v : values) {
    const int b = std::clamp(static_cast<int>((v - lo) / (hi - lo) * bins), 0, bins - 1);
    ++h[b];
  }
  std::ofstream out = open_out(path);
  out << "value,count\n";
  for (int b = 0; b < bins; ++b) out << lo + (b + 0.5) * (hi - lo) / bins << ',' << h[b] << '\n';
}

}  // namespace

void register_population(CLI::App& app) {
  auto st = std::make_shared<PopState>();
  CLI::App* cmd = app.add_subcommand("population", "Population dynamics of the cavity equations");
  cmd->require_subcommand(1);

  CLI::App* rs = cmd->add_subcommand("rs", "Replica-symmetric entropy");
  rs->add_option("--k", st->k);
  rs->add_option("--alpha", st->alpha)->required();
  rs->add_option("--pop-size", st->size);
  rs->add_option("--burn-in", st->burn_in);
  rs->add_option("--measure", st->measure);
  rs->add_option("--model", st->model, "ksat or xorsat");
  rs->add_option("--seed", st->seed);
  rs->add_option("--histogram", st->histogram, "CSV histogram of the cavity fields");
  rs->add_option("--bins", st->bins);
  rs->callback([st] {
    RsPopulationParams p;
    p.size = st->size;
    p.burn_in = st->burn_in;
    p.measure = st->measure;
    if (st->model == "xorsat") p.model = PopulationModel::xorsat;
    else if (st->model != "ksat") throw std::invalid_argument("model must be ksat or xorsat");
    const RsPopulationResult r = rs_population(st->k, st->alpha, p, RngSeed{st->seed, 0});
    if (!st->histogram.empty()) write_histogram(st->histogram, r.population.values, -p.field_cap, p.field_cap, st->bins);
    emit({{"k", st->k},
          {"alpha", st->alpha},
          {"model", st->model},
          {"pop_size", st->size},
          {"entropy", r.entropy},
          {"stderr", r.stderr_},
          {"entropy_ln2", r.entropy / std::log(2.0)},
          {"clamped_fraction", r.clamped_fraction},
          {"diverged", r.diverged}});
  });

  CLI::App* sp = cmd->add_subcommand("sp-onset", "Onset of a nontrivial survey population");
  sp->add_option("--k", st->k);
  sp->add_option("--alpha-grid", st->grid)->required();
  sp->add_option("--pop-size", st->size);
  sp->add_option("--sweeps", st->sweeps);
  sp->add_option("--seeds", st->seeds);
  sp->add_option("--seed", st->seed);
  sp->callback([st] {
    SpPopulationParams p;
    p.size = st->size;
    p.sweeps = st->sweeps;
    p.seeds = st->seeds;
    std::vector<double> grid = st->grid;
    std::sort(grid.begin(), grid.end());
    const SpOnsetEstimate e = sp_population_onset(st->k, grid, p, RngSeed{st->seed, 0});
    json pts = json::array();
    for (const auto& q : e.points)
      pts.push_back({{"alpha", q.alpha}, {"nontrivial_votes", q.nontrivial_votes}, {"seeds", q.seeds},
                     {"trivial_mass", q.trivial_mass}});
    emit({{"k", st->k},
          {"alpha_d", e.alpha_d},
          {"bracket", {e.bracket_lo, e.bracket_hi}},
          {"found", e.found},
          {"widened", e.widened},
          {"points", pts}});
  });
}

namespace {

struct ExperimentState {
  std::string config;
  std::string output;
  int workers = 0;
  std::uint64_t max_jobs = 0;
  std::string curves;
};

json fit_json(const FssFit& f) {
  json widths = json::array();
  for (const auto& w : f.widths)
    widths.push_back({{"N", w.n}, {"alpha_75", w.alpha_75}, {"alpha_25", w.alpha_25}, {"width", w.width},
                      {"smoothed", w.smoothed}});
  return {{"alpha_c", f.alpha_c},       {"alpha_c_err", f.alpha_c_err},
          {"nu", f.nu},                 {"nu_err", f.nu_err},
          {"valid", f.valid},           {"smoothed", f.smoothed},
          {"nu_below_two", f.nu_below_two}, {"r2", f.r2},
          {"widths", widths},           {"pairwise_crossings", f.pairwise_crossings}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void register_experiment(CLI::App& app) {
  auto st = std::make_shared<ExperimentState>();
  CLI::App* cmd = app.add_subcommand("experiment", "Run a P(sat) sweep from a JSON config");
  cmd->add_option("--config", st->config, "JSON configuration")->required();
  cmd->add_option("--output", st->output, "output directory (overrides the config)");
  cmd->add_option("--workers", st->workers, "worker threads (overrides config and RCSP_WORKERS)");
  cmd->add_option("--max-jobs", st->max_jobs, "stop after this many new jobs");
  cmd->callback([st] {
    ExperimentConfig c = parse_config(slurp(st->config));
    if (!st->output.empty()) c.output = st->output;
    if (st->workers > 0) c.workers = st->workers;
    std::optional<std::size_t> cap;
    if (st->max_jobs) cap = st->max_jobs;
    const ExperimentSummary s = run_experiment(c, cap);
    json out{{"output", c.output},
             {"jobs_total", s.jobs_total},
             {"jobs_run", s.jobs_run},
             {"jobs_resumed", s.jobs_resumed},
             {"complete", s.complete},
             {"wall_seconds", s.wall_seconds}};
    std::set<int> sizes;
    for (const auto& p : s.curves) sizes.insert(p.n);
    if (s.complete && sizes.size() >= 3) out["fss"] = fit_json(fss_fit(s.curves));
    emit(out);
  });

  CLI::App* fss = app.add_subcommand("fss", "Finite-size-scaling fit of a curves CSV");
  fss->add_option("--curves", st->curves, "curves.csv")->required();
  fss->callback([st] { emit(fit_json(fss_fit(parse_curves_csv(slurp(st->curves))))); });
}

}  // namespace rcsp::cli
