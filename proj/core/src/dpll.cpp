#include "rcsp/dpll.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rcsp/generators.hpp"

namespace rcsp {

SearchState::SearchState(const CnfFormula& f) : f_(f), val_(f.n_vars, 0), unset_(f.n_vars) {
  std::vector<std::size_t> deg(f.n_vars + 1, 0);
  int maxlen = 0;
  for (const auto& c : f.clauses) {
    maxlen = std::max(maxlen, static_cast<int>(c.size()));
    for (const auto& l : c) ++deg[l.var + 1];
  }
  occ_start_.assign(f.n_vars + 1, 0);
  for (int i = 0; i < f.n_vars; ++i) occ_start_[i + 1] = occ_start_[i] + deg[i + 1];
  occ_.resize(occ_start_[f.n_vars]);
  std::vector<std::size_t> fill(occ_start_.begin(), occ_start_.end() - 1);
  for (std::size_t a = 0; a < f.clauses.size(); ++a)
    for (const auto& l : f.clauses[a]) occ_[fill[l.var]++] = {static_cast<std::uint32_t>(a), l.sign};
  const std::size_t m = f.clauses.size();
  buckets_.assign(maxlen + 1, IndexSet(m));
  free_.resize(m);
  true_.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    free_[a] = static_cast<int>(f.clauses[a].size());
    buckets_[free_[a]].insert(a);
  }
  active_ = m;
  for (int v = 0; v < f.n_vars; ++v) unset_.insert(v);
  trail_.reserve(f.n_vars);
}

std::span<const std::size_t> SearchState::clauses_of_length(int len) const {
  if (len < 0 || len >= static_cast<int>(buckets_.size())) return {};
  return buckets_[len].items();
}

void SearchState::free_literals(std::size_t clause, std::vector<Literal>& out) const {
  out.clear();
  for (const auto& l : f_.clauses[clause])
    if (val_[l.var] == 0) out.push_back(l);
}

void SearchState::move_bucket(std::size_t c, int from, int to) {
  buckets_[from].erase(c);
  buckets_[to].insert(c);
}

void SearchState::assign(int v, int s) {
  if (val_[v] != 0) throw std::logic_error("variable already assigned");
  val_[v] = static_cast<std::int8_t>(s);
  unset_.erase(v);
  trail_.push_back({v, s});
  for (std::size_t p = occ_start_[v]; p < occ_start_[v + 1]; ++p) {
    const auto [c, sign] = occ_[p];
    const int before = free_[c]--;
    if (true_[c] > 0) {
      if (sign == s) ++true_[c];
      continue;
    }
    if (sign == s) {
      true_[c] = 1;
      buckets_[before].erase(c);
      --active_;
    } else {
      move_bucket(c, before, before - 1);
    }
  }
}

void SearchState::undo(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    const Literal lit = trail_.back();
    trail_.pop_back();
    const int v = lit.var, s = lit.sign;
    for (std::size_t p = occ_start_[v]; p < occ_start_[v + 1]; ++p) {
      const auto [c, sign] = occ_[p];
      const int after = ++free_[c];
      if (sign == s) {
        if (--true_[c] == 0) {
          buckets_[after].insert(c);
          ++active_;
        }
      } else if (true_[c] == 0) {
        move_bucket(c, after - 1, after);
      }
    }
    val_[v] = 0;
    unset_.insert(v);
  }
}

ResidualFormula SearchState::residual() const { return simplify(f_, val_); }

UpResult unit_propagation(SearchState& st, Rng* order) {
  UpResult r;
  std::vector<Literal> lits;
  while (!st.conflict() && st.count(1) > 0) {
    const auto units = st.clauses_of_length(1);
    const std::size_t c = order ? units[order->below(units.size())] : units.back();
    st.free_literals(c, lits);
    const Literal l = lits.front();
    st.assign(l.var, l.sign);
    r.forced.push_back(l);
  }
  r.contradiction = st.conflict();
  return r;
}

SplitHeuristic parse_split_heuristic(const std::string& s) {
  if (s == "uc" || s == "UC") return SplitHeuristic::uc;
  if (s == "guc" || s == "GUC") return SplitHeuristic::guc;
  throw std::invalid_argument("unknown split heuristic: " + s);
}

std::string to_string(SplitHeuristic h) { return h == SplitHeuristic::uc ? "uc" : "guc"; }

std::string to_string(DpllOutcome o) {
  switch (o) {
    case DpllOutcome::sat: return "SAT";
    case DpllOutcome::unsat: return "UNSAT";
    case DpllOutcome::budget: return "budget";
  }
  return "?";
}

Literal choose_split(const SearchState& st, SplitHeuristic h, Rng& rng) {
  if (h == SplitHeuristic::uc || st.satisfied()) {
    const auto& u = st.unset_vars();
    if (u.empty()) throw std::logic_error("no unset variable to split on");
    const int v = static_cast<int>(u[rng.below(u.size())]);
    return {v, rng.spin()};
  }
  for (int len = 1; len <= st.max_length(); ++len) {
    const auto cls = st.clauses_of_length(len);
    if (cls.empty()) continue;
    const std::size_t c = cls[rng.below(cls.size())];
    std::vector<Literal> lits;
    st.free_literals(c, lits);
    return lits[rng.below(lits.size())];
  }
  throw std::logic_error("no residual clause to split on");
}

namespace {

PlanePoint plane_point(const SearchState& st) {
  PlanePoint p;
  const int n = st.num_vars();
  const std::size_t T = st.num_assigned();
  p.t = n ? double(T) / n : 0.0;
  p.c1 = st.count(1);
  p.c2 = st.count(2);
  for (int len = 3; len <= st.max_length(); ++len) p.c3 += st.count(len);
  const double total = double(p.c2 + p.c3);
  p.p = total > 0 ? double(p.c3) / total : 0.0;
  const std::size_t free_vars = static_cast<std::size_t>(n) - T;
  p.alpha = free_vars ? total / double(free_vars) : 0.0;
  return p;
}

Assignment complete_assignment(const SearchState& st, Rng& rng) {
  Assignment a(st.num_vars());
  for (int v = 0; v < st.num_vars(); ++v) a[v] = st.value(v) ? st.value(v) : static_cast<std::int8_t>(rng.spin());
  return a;
}

}  // namespace

NoBacktrackResult run_no_backtrack(const CnfFormula& f, SplitHeuristic h, RngSeed seed,
                                   const NoBacktrackOptions& opt) {
  Rng rng(seed);
  SearchState st(f);
  NoBacktrackResult out;
  const std::size_t stride = opt.stride ? opt.stride : std::max<std::size_t>(1, f.n_vars / 500);
  std::size_t next_sample = 0;
  auto sample = [&](bool force) {
    if (!opt.record) return;
    if (force || st.num_assigned() >= next_sample) {
      out.trajectory.push_back(plane_point(st));
      next_sample = (st.num_assigned() / stride + 1) * stride;
    }
  };
  sample(true);
  while (true) {
    const UpResult up = unit_propagation(st);
    if (up.contradiction) {
      out.failure_T = st.num_assigned();
      sample(true);
      return out;
    }
    if (st.satisfied()) break;
    sample(false);
    const Literal l = choose_split(st, h, rng);
    st.assign(l.var, l.sign);
    ++out.free_choices;
  }
  if (opt.record && (out.trajectory.empty() || out.trajectory.back().t != plane_point(st).t))
    out.trajectory.push_back(plane_point(st));
  out.assignment = complete_assignment(st, rng);
  if (energy(f, out.assignment) != 0) throw std::logic_error("heuristic search certificate check failed");
  out.success = true;
  return out;
}

DpllResult dpll_complete(const CnfFormula& f, SplitHeuristic h, RngSeed seed, std::uint64_t node_budget) {
  if (node_budget < 1) throw std::invalid_argument("node budget must be positive");
  struct Decision {
    Literal lit;
    std::size_t trail_pos;
    bool flipped;
  };
  Rng rng(seed);
  SearchState st(f);
  DpllResult out;
  TreeStats& ts = out.stats;
  std::vector<Decision> stack;
  const double n = std::max(1, f.n_vars);
  while (true) {
    const UpResult up = unit_propagation(st);
    ts.up_steps += up.forced.size();
    if (up.contradiction) {
      ++ts.contradictions;
      while (!stack.empty() && stack.back().flipped) stack.pop_back();
      if (stack.empty()) {
        ts.outcome = DpllOutcome::unsat;
        return out;
      }
      Decision& d = stack.back();
      st.undo(d.trail_pos);
      d.flipped = true;
      d.lit.sign = -d.lit.sign;
      ++ts.backtracks;
      ts.t_G = std::min(ts.t_G, double(d.trail_pos) / n);
      st.assign(d.lit.var, d.lit.sign);
      continue;
    }
    if (st.satisfied()) {
      out.assignment = complete_assignment(st, rng);
      if (energy(f, out.assignment) != 0) throw std::logic_error("DPLL certificate check failed");
      ts.outcome = DpllOutcome::sat;
      return out;
    }
    if (ts.splits >= node_budget) {
      ts.outcome = DpllOutcome::budget;
      return out;
    }
    const Literal l = choose_split(st, h, rng);
    stack.push_back({l, st.num_assigned(), false});
    st.assign(l.var, l.sign);
    ++ts.splits;
  }
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TauFit tree_size_exponent(int k, double alpha, const std::vector<int>& sizes, int samples, SplitHeuristic h,
                          RngSeed seed, std::uint64_t node_budget) {
  if (sizes.size() < 2) throw std::invalid_argument("need at least two sizes");
  TauFit fit;
  fit.sizes = sizes;
  for (int n : sizes) {
    std::vector<double> splits, tg;
    for (int s = 0; s < samples; ++s) {
      const RngSeed inst{seed.base, hash_words({seed.stream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)})};
      const CnfFormula f = gen_formula({EnsembleKind::ksat, n, k, alpha, 1.0, inst}).cnf();
      const DpllResult r = dpll_complete(f, h, {inst.base, inst.stream ^ 0x5eedULL}, node_budget);
      if (r.stats.outcome == DpllOutcome::budget) {
        ++fit.budget_hits;
        continue;
      }
      splits.push_back(static_cast<double>(r.stats.splits));
      if (r.stats.outcome == DpllOutcome::sat) tg.push_back(r.stats.t_G);
    }
    fit.median_splits.push_back(median(splits));
    fit.median_t_G.push_back(median(tg));
  }
  // Least squares of y = ln(median splits) on x = N.
  const std::size_t m = sizes.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    ys[i] = std::log(std::max(1.0, fit.median_splits[i]));
    sx += sizes[i], sy += ys[i], sxx += double(sizes[i]) * sizes[i], sxy += sizes[i] * ys[i];
  }
  const double dm = double(m);
  const double sxx_c = sxx - sx * sx / dm;
  fit.tau = (sxy - sx * sy / dm) / sxx_c;
  fit.intercept = (sy - fit.tau * sx) / dm;
  if (m > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = ys[i] - fit.intercept - fit.tau * sizes[i];
      rss += e * e;
    }
    fit.tau_stderr = std::sqrt(rss / (dm - 2) / sxx_c);
  }
  return fit;
}

std::optional<Assignment> two_sat_solve(const CnfFormula& f) {
  const int n = f.n_vars;
  // Node 2v is literal "v true", 2v+1 is "v false".
  auto node = [](const Literal& l) { return 2 * l.var + (l.sign > 0 ? 0 : 1); };
  const int nn = 2 * n;
  std::vector<std::vector<int>> g(nn), gr(nn);
  auto edge = [&](int a, int b) {
    g[a].push_back(b);
    gr[b].push_back(a);
  };
  for (const auto& c : f.clauses) {
    if (c.empty()) return std::nullopt;
    if (c.size() > 2) throw std::invalid_argument("two_sat_solve needs clauses of length <= 2");
    const int a = node(c[0]);
    const int b = c.size() == 2 ? node(c[1]) : a;
    edge(a ^ 1, b);
    edge(b ^ 1, a);
  }
  // Kosaraju with explicit stacks.
  std::vector<int> order;
  order.reserve(nn);
  std::vector<char> seen(nn, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int s = 0; s < nn; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.push_back({s, 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < g[u].size()) {
        const int w = g[u][i++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(nn, -1);
  int nc = 0;
  std::vector<int> todo;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    todo.push_back(*it);
    comp[*it] = nc;
    while (!todo.empty()) {
      const int u = todo.back();
      todo.pop_back();
      for (int w : gr[u])
        if (comp[w] < 0) {
          comp[w] = nc;
          todo.push_back(w);
        }
    }
    ++nc;
  }
  // Components come out in topological order of the condensation; a
  // literal is set true when its component is later than its negation's.
  Assignment a(n);
  for (int v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
    a[v] = comp[2 * v] > comp[2 * v + 1] ? 1 : -1;
  }
  if (energy(f, a) != 0) throw std::logic_error("2-SAT certificate check failed");
  return a;
}

}  // namespace rcsp
