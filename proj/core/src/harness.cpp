#include "rcsp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rcsp/dpll.hpp"
#include "rcsp/gf2.hpp"
#include "rcsp/stats.hpp"

#ifndef RCSP_VERSION
#define RCSP_VERSION "unknown"
#endif

namespace rcsp {

using json = nlohmann::ordered_json;

std::string version() { return RCSP_VERSION; }

Decider parse_decider(const std::string& s) {
  if (s == "dpll" || s == "dpll_complete") return Decider::dpll;
  if (s == "gf2" || s == "gf2_solve") return Decider::gf2;
  if (s == "two_sat" || s == "2sat") return Decider::two_sat;
  if (s == "uc") return Decider::uc;
  if (s == "guc") return Decider::guc;
  if (s == "mp" || s == "mp_decimate") return Decider::mp;
  throw std::invalid_argument("unknown decider: " + s);
}

std::string to_string(Decider d) {
  switch (d) {
    case Decider::dpll: return "dpll";
    case Decider::gf2: return "gf2";
    case Decider::two_sat: return "two_sat";
    case Decider::uc: return "uc";
    case Decider::guc: return "guc";
    case Decider::mp: return "mp";
  }
  return "?";
}

bool is_complete(Decider d) { return d == Decider::dpll || d == Decider::gf2 || d == Decider::two_sat; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::sat: return "sat";
    case Verdict::unsat: return "unsat";
    case Verdict::censored: return "censored";
  }
  return "?";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "sat") return Verdict::sat;
  if (s == "unsat") return Verdict::unsat;
  if (s == "censored") return Verdict::censored;
  throw std::invalid_argument("unknown verdict: " + s);
}

Verdict decide(const GeneratedInstance& inst, Decider d, const DeciderParams& params, RngSeed seed) {
  if (d == Decider::gf2) {
    if (inst.is_cnf()) throw std::invalid_argument("gf2 decider needs an XOR formula");
    return gf2_solve(inst.xorf()).satisfiable ? Verdict::sat : Verdict::unsat;
  }
  if (!inst.is_cnf()) throw std::invalid_argument(to_string(d) + " decider needs a CNF formula");
  const CnfFormula& f = inst.cnf();
  switch (d) {
    case Decider::dpll: {
      const DpllResult r = dpll_complete(f, params.split, seed, params.node_budget);
      if (r.stats.outcome == DpllOutcome::sat) return Verdict::sat;
      return r.stats.outcome == DpllOutcome::unsat ? Verdict::unsat : Verdict::censored;
    }
    case Decider::two_sat: return two_sat_solve(f) ? Verdict::sat : Verdict::unsat;
    case Decider::uc:
    case Decider::guc: {
      NoBacktrackOptions o;
      o.record = false;
      const auto h = d == Decider::uc ? SplitHeuristic::uc : SplitHeuristic::guc;
      return run_no_backtrack(f, h, seed, o).success ? Verdict::sat : Verdict::unsat;
    }
    case Decider::mp: {
      DecimateParams p = params.mp;
      p.seed = seed;
      p.log_steps = false;
      return mp_decimate(f, p).sat() ? Verdict::sat : Verdict::unsat;
    }
    case Decider::gf2: break;
  }
  throw std::invalid_argument("unknown decider");
}

namespace {

template <class T>
T take(json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  T v = j.at(key).get<T>();
  j.erase(key);
  return v;
}

void reject_rest(const json& j, const std::string& where) {
  if (!j.empty()) throw std::invalid_argument("unknown key in " + where + ": " + j.begin().key());
}

json to_json_obj(const ExperimentConfig& c, bool with_runtime) {
  const DecimateParams& m = c.params.mp;
  json j;
  j["decider"] = to_string(c.decider);
  j["params"] = {{"node_budget", c.params.node_budget},
                 {"split", to_string(c.params.split)},
                 {"mp",
                  {{"guide", to_string(m.guide)},
                   {"block_fraction", m.block_fraction},
                   {"epsilon", m.mp.epsilon},
                   {"damping", m.mp.damping},
                   {"max_sweeps", m.mp.max_sweeps},
                   {"trivial_threshold", m.trivial_threshold},
                   {"restarts", m.restarts},
                   {"noise", m.walk.noise},
                   {"walk_steps_per_clause", m.walk_steps_per_clause}}}};
  j["ensemble"] = {{"kind", to_string(c.ensemble.kind)}, {"k", c.ensemble.k}, {"p", c.ensemble.p}};
  j["sizes"] = c.sizes;
  j["alphas"] = c.alphas;
  j["samples"] = c.samples;
  j["base_seed"] = c.base_seed;
  if (with_runtime) {
    j["workers"] = c.workers;
    j["output"] = c.output;
  }
  return j;
}

std::string format_alpha(double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", a);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c;
  c.decider = parse_decider(take<std::string>(j, "decider", "dpll"));
  if (j.contains("params")) {
    json p = j.at("params");
    j.erase("params");
    c.params.node_budget = take<std::uint64_t>(p, "node_budget", c.params.node_budget);
    c.params.split = parse_split_heuristic(take<std::string>(p, "split", to_string(c.params.split)));
    if (p.contains("mp")) {
      json m = p.at("mp");
      p.erase("mp");
      DecimateParams& d = c.params.mp;
      d.guide = parse_guide(take<std::string>(m, "guide", to_string(d.guide)));
      d.block_fraction = take<double>(m, "block_fraction", d.block_fraction);
      d.mp.epsilon = take<double>(m, "epsilon", d.mp.epsilon);
      d.mp.damping = take<double>(m, "damping", d.mp.damping);
      d.mp.max_sweeps = take<int>(m, "max_sweeps", d.mp.max_sweeps);
      d.trivial_threshold = take<double>(m, "trivial_threshold", d.trivial_threshold);
      d.restarts = take<int>(m, "restarts", d.restarts);
      d.walk.noise = take<double>(m, "noise", d.walk.noise);
      d.walk_steps_per_clause = take<double>(m, "walk_steps_per_clause", d.walk_steps_per_clause);
      reject_rest(m, "params.mp");
    }
    reject_rest(p, "params");
  }
  if (j.contains("ensemble")) {
    json e = j.at("ensemble");
    j.erase("ensemble");
    c.ensemble.kind = parse_ensemble_kind(take<std::string>(e, "kind", "ksat"));
    c.ensemble.k = take<int>(e, "k", c.ensemble.k);
    c.ensemble.p = take<double>(e, "p", c.ensemble.p);
    reject_rest(e, "ensemble");
  }
  c.sizes = take<std::vector<int>>(j, "sizes", {});
  c.alphas = take<std::vector<double>>(j, "alphas", {});
  c.samples = take<int>(j, "samples", c.samples);
  c.workers = take<int>(j, "workers", c.workers);
  c.base_seed = take<std::uint64_t>(j, "base_seed", c.base_seed);
  c.output = take<std::string>(j, "output", c.output);
  reject_rest(j, "config");
  validate(c);
  return c;
}

std::string config_to_json(const ExperimentConfig& c) { return to_json_obj(c, true).dump(2); }

std::uint64_t config_hash(const ExperimentConfig& c) {
  const std::string s = to_json_obj(c, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate(const ExperimentConfig& c) {
  if (c.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (c.sizes.empty()) throw std::invalid_argument("no sizes given");
  if (c.alphas.empty()) throw std::invalid_argument("no alphas given");
  for (int n : c.sizes)
    if (n < 1) throw std::invalid_argument("sizes must be positive");
  for (double a : c.alphas)
    if (!(a >= 0)) throw std::invalid_argument("alphas must be non-negative");
  const bool xor_kind = c.ensemble.kind == EnsembleKind::xorsat;
  if (xor_kind != (c.decider == Decider::gf2))
    throw std::invalid_argument("gf2 decides exactly the xorsat ensemble");
}

std::vector<Job> expand_jobs(const ExperimentConfig& c) {
  std::vector<Job> jobs;
  for (int n : c.sizes)
    for (std::size_t a = 0; a < c.alphas.size(); ++a)
      for (int i = 0; i < c.samples; ++i) jobs.push_back({n, a, i});
  return jobs;
}

RngSeed job_seed(std::uint64_t base, int n, double alpha, int index) {
  return RngSeed{hash_words({base, static_cast<std::uint64_t>(n), std::bit_cast<std::uint64_t>(alpha),
                             static_cast<std::uint64_t>(index)}),
                 0};
}

JobResult run_job(const ExperimentConfig& c, const Job& job) {
  const double alpha = c.alphas.at(job.alpha_index);
  const RngSeed seed = job_seed(c.base_seed, job.n, alpha, job.index);
  EnsembleSpec spec = c.ensemble;
  spec.n = job.n;
  spec.alpha = alpha;
  spec.seed = seed;
  const GeneratedInstance inst = gen_formula(spec);
  return {job.n, alpha, job.index, decide(inst, c.decider, c.params, RngSeed{seed.base, 1})};
}

std::vector<CurvePoint> aggregate(const ExperimentConfig& c, const std::vector<JobResult>& results) {
  std::map<std::pair<int, double>, CurvePoint> pts;
  for (const auto& r : results) {
    CurvePoint& p = pts[{r.n, r.alpha}];
    p.k = c.ensemble.k;
    p.n = r.n;
    p.alpha = r.alpha;
    p.lower_bound = !is_complete(c.decider);
    if (r.verdict == Verdict::censored) {
      ++p.censored;
      continue;
    }
    ++p.trials;
    if (r.verdict == Verdict::sat) ++p.successes;
  }
  std::vector<CurvePoint> out;
  for (auto& [key, p] : pts) {
    p.p_hat = p.trials ? double(p.successes) / double(p.trials) : 0.0;
    const Interval ci = wilson_interval(p.successes, p.trials);
    p.ci_lo = ci.lo;
    p.ci_hi = ci.hi;
    out.push_back(p);
  }
  return out;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RCSP_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Runs `jobs` on a pool; `sink` is called under a lock for each result.
template <class Sink>
void run_pool(const ExperimentConfig& c, const std::vector<Job>& jobs, Sink sink) {
  const int workers = std::max(1, std::min<int>(resolve_workers(c.workers), static_cast<int>(jobs.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr error;
  auto work = [&] {
    while (!stop) {
      const std::size_t j = next++;
      if (j >= jobs.size()) return;
      try {
        const JobResult r = run_job(c, jobs[j]);
        std::lock_guard lock(mu);
        sink(jobs[j], r);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace

std::vector<CurvePoint> psat_curve(const ExperimentConfig& c) {
  validate(c);
  const std::vector<Job> jobs = expand_jobs(c);
  std::vector<JobResult> results;
  run_pool(c, jobs, [&](const Job&, const JobResult& r) { results.push_back(r); });
  return aggregate(c, results);
}

std::string curves_csv(const std::vector<CurvePoint>& curves) {
  std::ostringstream os;
  os << "k,N,alpha,trials,successes,p_hat,ci_lo,ci_hi,censored,lower_bound\n";
  char buf[256];
  for (const auto& p : curves) {
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%zu,%zu,%.6f,%.6f,%.6f,%zu,%d\n", p.k, p.n, format_alpha(p.alpha).c_str(),
                  p.trials, p.successes, p.p_hat, p.ci_lo, p.ci_hi, p.censored, p.lower_bound ? 1 : 0);
    os << buf;
  }
  return os.str();
}

std::vector<CurvePoint> parse_curves_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<CurvePoint> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.rfind("k,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() < 5) throw std::runtime_error("curves line " + std::to_string(lineno) + ": too few columns");
    CurvePoint p;
    p.k = std::stoi(f[0]);
    p.n = std::stoi(f[1]);
    p.alpha = std::stod(f[2]);
    p.trials = std::stoull(f[3]);
    p.successes = std::stoull(f[4]);
    if (p.successes > p.trials) throw std::runtime_error("curves line " + std::to_string(lineno) + ": successes > trials");
    p.p_hat = p.trials ? double(p.successes) / double(p.trials) : 0.0;
    const Interval ci = wilson_interval(p.successes, p.trials);
    p.ci_lo = ci.lo;
    p.ci_hi = ci.hi;
    if (f.size() > 8) p.censored = std::stoull(f[8]);
    if (f.size() > 9) p.lower_bound = f[9] == "1";
    out.push_back(p);
  }
  return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& c, std::optional<std::size_t> max_new_jobs) {
  namespace fs = std::filesystem;
  validate(c);
  if (c.output.empty()) throw std::invalid_argument("output directory not set");
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir(c.output);
  fs::create_directories(dir);
  const fs::path journal = dir / "jobs.csv";
  const std::string header = "# rcsp-journal " + hex(config_hash(c));
  const std::vector<Job> jobs = expand_jobs(c);

  std::map<std::tuple<int, std::size_t, int>, Verdict> done;
  if (fs::exists(journal)) {
    std::ifstream in(journal);
    std::string line;
    if (!std::getline(in, line) || line != header)
      throw std::runtime_error("journal " + journal.string() + " belongs to a different configuration");
    while (std::getline(in, line)) {
      // A torn final line from an interrupted write is skipped.
      std::stringstream ls(line);
      std::string n, a, i, v;
      if (!std::getline(ls, n, ',') || !std::getline(ls, a, ',') || !std::getline(ls, i, ',') || !std::getline(ls, v))
        continue;
      try {
        done[{std::stoi(n), std::stoull(a), std::stoi(i)}] = parse_verdict(v);
      } catch (const std::exception&) {
      }
    }
  } else {
    write_file(journal, header + "\n");
  }

  ExperimentSummary s;
  s.jobs_total = jobs.size();
  std::vector<Job> pending;
  for (const Job& j : jobs)
    if (!done.count({j.n, j.alpha_index, j.index})) pending.push_back(j);
  s.jobs_resumed = jobs.size() - pending.size();
  if (max_new_jobs && pending.size() > *max_new_jobs) pending.resize(*max_new_jobs);

  {
    std::ofstream out(journal, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + journal.string());
    run_pool(c, pending, [&](const Job& j, const JobResult& r) {
      out << j.n << ',' << j.alpha_index << ',' << j.index << ',' << to_string(r.verdict) << '\n';
      out.flush();
      if (!out) throw std::runtime_error("journal write failed");
      done[{j.n, j.alpha_index, j.index}] = r.verdict;
      ++s.jobs_run;
    });
  }
  s.complete = done.size() >= jobs.size();
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!s.complete) return s;

  std::vector<JobResult> results;
  std::ostringstream rs;
  rs << "N,alpha,index,verdict\n";
  for (const Job& j : jobs) {
    const Verdict v = done.at({j.n, j.alpha_index, j.index});
    results.push_back({j.n, c.alphas[j.alpha_index], j.index, v});
    rs << j.n << ',' << format_alpha(c.alphas[j.alpha_index]) << ',' << j.index << ',' << to_string(v) << '\n';
  }
  write_file(dir / "results.csv", rs.str());
  s.curves = aggregate(c, results);
  write_file(dir / "curves.csv", curves_csv(s.curves));
  json m;
  m["config"] = to_json_obj(c, true);
  m["config_hash"] = hex(config_hash(c));
  m["version"] = version();
  m["jobs_total"] = s.jobs_total;
  m["jobs_run"] = s.jobs_run;
  m["jobs_resumed"] = s.jobs_resumed;
  m["workers"] = resolve_workers(c.workers);
  m["wall_seconds"] = s.wall_seconds;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  return s;
}

}  // namespace rcsp
