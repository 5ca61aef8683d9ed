#include "rcsp/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcsp/generators.hpp"

namespace rcsp {

FocusHeuristic parse_focus_heuristic(const std::string& s) {
  if (s == "uniform") return FocusHeuristic::uniform;
  if (s == "greedy_zero_break" || s == "greedy") return FocusHeuristic::greedy_zero_break;
  if (s == "record_tolerance" || s == "record") return FocusHeuristic::record_tolerance;
  throw std::invalid_argument("unknown focus heuristic: " + s);
}

namespace {

// Walk state with O(1) sampling of UNSAT clauses and O(degree) flips.
class WalkState {
 public:
  explicit WalkState(const CnfFormula& f) : f_(f), m_(f.clauses.size()) {
    std::vector<std::size_t> deg(f.n_vars + 1, 0);
    for (const auto& c : f.clauses)
      for (const auto& l : c) ++deg[l.var + 1];
    occ_start_.assign(f.n_vars + 1, 0);
    for (int i = 0; i < f.n_vars; ++i) occ_start_[i + 1] = occ_start_[i] + deg[i + 1];
    occ_.resize(occ_start_[f.n_vars]);
    std::vector<std::size_t> fill(occ_start_.begin(), occ_start_.end() - 1);
    for (std::size_t a = 0; a < m_; ++a)
      for (const auto& l : f.clauses[a]) occ_[fill[l.var]++] = {static_cast<std::uint32_t>(a), l.sign};
    num_true_.assign(m_, 0);
    pos_.assign(m_, kNone);
  }

  void reset(Assignment a) {
    s_ = std::move(a);
    unsat_.clear();
    for (std::size_t c = 0; c < m_; ++c) {
      int t = 0;
      for (const auto& l : f_.clauses[c]) t += (s_[l.var] == l.sign);
      num_true_[c] = t;
      pos_[c] = kNone;
      if (t == 0) add(c);
    }
  }

  std::uint64_t energy() const { return unsat_.size(); }
  std::size_t unsat_clause(std::size_t j) const { return unsat_[j]; }
  const Assignment& assignment() const { return s_; }
  const Clause& clause(std::size_t c) const { return f_.clauses[c]; }

  // Clauses that would become UNSAT by flipping v.
  int break_count(int v) const {
    int b = 0;
    for (std::size_t p = occ_start_[v]; p < occ_start_[v + 1]; ++p)
      if (num_true_[occ_[p].clause] == 1 && occ_[p].sign == s_[v]) ++b;
    return b;
  }
  // Clauses that would become SAT by flipping v.
  int make_count(int v) const {
    int mk = 0;
    for (std::size_t p = occ_start_[v]; p < occ_start_[v + 1]; ++p)
      if (num_true_[occ_[p].clause] == 0) ++mk;
    return mk;
  }

  void flip(int v) {
    s_[v] = static_cast<std::int8_t>(-s_[v]);
    for (std::size_t p = occ_start_[v]; p < occ_start_[v + 1]; ++p) {
      const auto [c, sign] = occ_[p];
      if (sign == s_[v]) {
        if (num_true_[c]++ == 0) remove(c);
      } else {
        if (--num_true_[c] == 0) add(c);
      }
    }
  }

  void audit() const {
    if (energy() != rcsp::energy(f_, s_)) throw std::logic_error("incremental energy diverged from recount");
  }

 private:
  static constexpr std::size_t kNone = ~std::size_t{0};
  struct Occ {
    std::uint32_t clause;
    int sign;
  };

  void add(std::size_t c) {
    pos_[c] = unsat_.size();
    unsat_.push_back(c);
  }
  void remove(std::size_t c) {
    const std::size_t p = pos_[c];
    const std::size_t last = unsat_.back();
    unsat_[p] = last;
    pos_[last] = p;
    unsat_.pop_back();
    pos_[c] = kNone;
  }

  const CnfFormula& f_;
  std::size_t m_;
  std::vector<std::size_t> occ_start_;
  std::vector<Occ> occ_;
  Assignment s_;
  std::vector<int> num_true_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> unsat_;
};

struct Recorder {
  WalkTrajectory* traj;
  std::uint64_t stride;
  bool on;

  void operator()(std::uint64_t T, std::uint64_t E) const {
    if (on && T % stride == 0) traj->samples.push_back({T, E});
  }
  void final(std::uint64_t T, std::uint64_t E) const {
    if (on && (traj->samples.empty() || traj->samples.back().T != T)) traj->samples.push_back({T, E});
  }
};

std::uint64_t default_stride(const CnfFormula& f, const WalkOptions& opt) {
  if (opt.stride) return opt.stride;
  return std::max<std::uint64_t>(1, f.clauses.size() / 1000);
}

// Chooses the variable to flip among the literals of UNSAT clause c, or -1
// to reject the move.
template <class Choose>
WalkOutcome run_walk(const CnfFormula& f, std::uint64_t t_max, Rng& rng, const WalkOptions& opt,
                     Choose&& choose) {
  WalkState st(f);
  st.reset(opt.initial ? *opt.initial : random_assignment(rng, f.n_vars));
  WalkOutcome out;
  out.trajectory.m = f.clauses.size();
  const Recorder rec{&out.trajectory, default_stride(f, opt), opt.record};
  std::uint64_t T = 0;
  rec(T, st.energy());
  while (st.energy() > 0 && T < t_max) {
    const std::size_t c = st.unsat_clause(rng.below(st.energy()));
    const int v = choose(st, c);
    if (v >= 0) {
      st.flip(v);
      if (st.energy() > 0 && !clause_satisfied(st.clause(c), st.assignment()))
        throw std::logic_error("flip left the selected clause unsatisfied");
    }
    ++T;
    rec(T, st.energy());
    if (opt.audit_every && T % opt.audit_every == 0) st.audit();
  }
  rec.final(T, st.energy());
  out.steps = T;
  out.assignment = st.assignment();
  if (st.energy() == 0) {
    if (energy(f, out.assignment) != 0) throw std::logic_error("walk certificate check failed");
    out.status = WalkStatus::solution;
  }
  return out;
}

int uniform_pick(const WalkState& st, std::size_t c, Rng& rng) {
  const Clause& cl = st.clause(c);
  return cl[rng.below(cl.size())].var;
}

}  // namespace

WalkOutcome prwsat(const CnfFormula& f, std::uint64_t t_max, RngSeed seed, const WalkOptions& opt) {
  Rng rng(seed);
  return run_walk(f, t_max, rng, opt, [&](const WalkState& st, std::size_t c) { return uniform_pick(st, c, rng); });
}

WalkOutcome schoening(const CnfFormula& f, std::uint64_t max_restarts, RngSeed seed, const WalkOptions& opt) {
  Rng rng(seed);
  const std::uint64_t t_max = 3ULL * static_cast<std::uint64_t>(f.n_vars);
  WalkOutcome last;
  std::uint64_t total = 0;
  WalkOptions o = opt;
  for (std::uint64_t r = 0; r < max_restarts; ++r) {
    if (r > 0) o.initial.reset();
    Rng run_rng = rng.split(r);
    last = run_walk(f, t_max, run_rng, o,
                    [&](const WalkState& st, std::size_t c) { return uniform_pick(st, c, run_rng); });
    total += last.steps;
    if (last.status == WalkStatus::solution) {
      last.restarts = r;
      last.steps = total;
      return last;
    }
  }
  last.restarts = max_restarts;
  last.steps = total;
  last.status = WalkStatus::undetermined;
  return last;
}

WalkOutcome focused_walk(const CnfFormula& f, const FocusParams& params, std::uint64_t t_max, RngSeed seed,
                         const WalkOptions& opt) {
  if (!(params.noise >= 0.0 && params.noise <= 1.0)) throw std::invalid_argument("noise must lie in [0,1]");
  Rng rng(seed);
  switch (params.heuristic) {
    case FocusHeuristic::uniform:
      return run_walk(f, t_max, rng, opt,
                      [&](const WalkState& st, std::size_t c) { return uniform_pick(st, c, rng); });
    case FocusHeuristic::greedy_zero_break: {
      std::vector<int> zero;
      return run_walk(f, t_max, rng, opt, [&](const WalkState& st, std::size_t c) {
        if (params.noise >= 1.0 || rng.uniform() < params.noise) return uniform_pick(st, c, rng);
        // Zero-break candidates when present, otherwise the least-breaking ones.
        zero.clear();
        std::uint32_t least = ~std::uint32_t{0};
        for (const auto& l : st.clause(c)) {
          const std::uint32_t b = static_cast<std::uint32_t>(st.break_count(l.var));
          if (b < least) {
            least = b;
            zero.clear();
          }
          if (b == least) zero.push_back(l.var);
        }
        return zero[rng.below(zero.size())];
      });
    }
    case FocusHeuristic::record_tolerance: {
      std::uint64_t best = ~std::uint64_t{0};
      return run_walk(f, t_max, rng, opt, [&](const WalkState& st, std::size_t c) {
        best = std::min(best, st.energy());
        const int v = uniform_pick(st, c, rng);
        const double after = double(st.energy()) + st.break_count(v) - st.make_count(v);
        if (after > double(best) + params.tolerance) return -1;
        return v;
      });
    }
  }
  throw std::invalid_argument("unknown heuristic");
}

PlateauEstimate plateau_estimate(const std::vector<CnfFormula>& formulas, double t_burn, double t_measure,
                                 RngSeed seed) {
  if (!(t_measure > t_burn) || t_burn < 0) throw std::invalid_argument("need 0 <= t_burn < t_measure");
  PlateauEstimate out;
  const Rng root(seed);
  for (std::size_t r = 0; r < formulas.size(); ++r) {
    const CnfFormula& f = formulas[r];
    const double m = static_cast<double>(f.clauses.size());
    if (out.reference == 0.0 && f.uniform_length() > 0) {
      const int k = f.uniform_length();
      out.reference = (std::ldexp(1.0, k) - 1.0) / k;
    }
    const auto t0 = static_cast<std::uint64_t>(std::ceil(t_burn * m));
    const auto t1 = static_cast<std::uint64_t>(std::floor(t_measure * m));
    Rng rng = root.split(r);
    WalkState st(f);
    st.reset(random_assignment(rng, f.n_vars));
    std::uint64_t T = 0;
    double sum = 0.0;
    std::uint64_t count = 0;
    bool solved = false;
    while (T < t1) {
      if (st.energy() == 0) {
        solved = true;
        break;
      }
      const std::size_t c = st.unsat_clause(rng.below(st.energy()));
      st.flip(uniform_pick(st, c, rng));
      ++T;
      if (T >= t0) {
        sum += double(st.energy());
        ++count;
      }
    }
    if (solved || st.energy() == 0 || count == 0) {
      ++out.solved_runs;
      continue;
    }
    out.per_run.push_back(sum / double(count) / m);
  }
  out.runs_used = out.per_run.size();
  if (out.runs_used == 0) return out;
  double mean = 0.0;
  for (double v : out.per_run) mean += v;
  mean /= double(out.runs_used);
  double var = 0.0;
  for (double v : out.per_run) var += (v - mean) * (v - mean);
  out.phi_as = mean;
  out.stderr_ = out.runs_used > 1 ? std::sqrt(var / double(out.runs_used - 1) / double(out.runs_used)) : 0.0;
  return out;
}

VanishingFit plateau_vanishing_point(const std::vector<PlateauScanPoint>& scan, double floor) {
  std::vector<PlateauScanPoint> pts = scan;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
  auto vanished = [floor](const PlateauEstimate& e) {
    return e.solved_runs > e.runs_used || e.phi_as <= floor;
  };
  VanishingFit fit;
  std::size_t first = pts.size();
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (vanished(pts[i].estimate)) break;
    first = i;
  }
  if (first == 0 || first == pts.size())
    throw std::invalid_argument("scan does not bracket the vanishing of the plateau");
  fit.bracket_lo = pts[first - 1].alpha;
  fit.bracket_hi = pts[first].alpha;
  fit.alpha_rw = 0.5 * (fit.bracket_lo + fit.bracket_hi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < pts.size(); ++i) {
    const double x = pts[i].alpha, y = pts[i].estimate.phi_as;
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++fit.points;
  }
  if (fit.points >= 2) {
    const double n = double(fit.points);
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.linear_alpha = -(sy - fit.slope * sx) / n / fit.slope;
  } else {
    fit.linear_alpha = fit.alpha_rw;
  }
  return fit;
}

}  // namespace rcsp
