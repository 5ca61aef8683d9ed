#include "rcsp/decimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rcsp/dpll.hpp"
#include "rcsp/factor_graph.hpp"
#include "rcsp/generators.hpp"

namespace rcsp {

Guide parse_guide(const std::string& s) {
  if (s == "bp" || s == "BP") return Guide::bp;
  if (s == "wp" || s == "WP") return Guide::wp;
  if (s == "sp" || s == "SP") return Guide::sp;
  throw std::invalid_argument("unknown guide: " + s);
}

std::string to_string(Guide g) {
  switch (g) {
    case Guide::bp: return "bp";
    case Guide::wp: return "wp";
    case Guide::sp: return "sp";
  }
  return "?";
}

std::string to_string(DecimateStatus s) {
  switch (s) {
    case DecimateStatus::sat: return "sat";
    case DecimateStatus::non_convergence: return "non-convergence";
    case DecimateStatus::contradiction: return "contradiction";
    case DecimateStatus::fallback_failed: return "fallback-failed";
  }
  return "?";
}

namespace {

// Residual clauses of a search state with the original edge slot of every
// surviving literal, in factor graph edge order.
struct Residual {
  CnfFormula formula;
  std::vector<std::size_t> slots;
  std::size_t vars = 0;
};

Residual build_residual(const CnfFormula& f, const SearchState& st, const std::vector<std::size_t>& offset) {
  Residual r;
  r.formula.n_vars = f.n_vars;
  std::vector<std::size_t> ids;
  for (int len = 1; len <= st.max_length(); ++len) {
    const auto cs = st.clauses_of_length(len);
    ids.insert(ids.end(), cs.begin(), cs.end());
  }
  std::sort(ids.begin(), ids.end());
  std::vector<char> seen(f.n_vars, 0);
  for (std::size_t c : ids) {
    Clause cl;
    for (std::size_t p = 0; p < f.clauses[c].size(); ++p) {
      const Literal l = f.clauses[c][p];
      if (st.value(l.var) != 0) continue;
      cl.push_back(l);
      r.slots.push_back(offset[c] + p);
      if (!seen[l.var]) {
        seen[l.var] = 1;
        ++r.vars;
      }
    }
    r.formula.clauses.push_back(std::move(cl));
  }
  return r;
}

Assignment complete(const SearchState& st, Rng& rng) {
  Assignment a(st.num_vars());
  for (int i = 0; i < st.num_vars(); ++i) a[i] = static_cast<std::int8_t>(st.value(i) ? st.value(i) : rng.spin());
  return a;
}

struct Candidate {
  double score;
  std::uint64_t key;
  int var;
  int value;
};

DecimateResult decimate_once(const CnfFormula& f, const DecimateParams& params, Rng rng) {
  DecimateResult out;
  SearchState st(f);
  std::vector<std::size_t> offset(f.clauses.size() + 1, 0);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) offset[c + 1] = offset[c] + f.clauses[c].size();
  const std::size_t slots = offset.back();
  std::vector<double> warm_real(slots, 0.0);
  std::vector<std::uint8_t> warm_bits(slots, 0);
  if (params.guide == Guide::sp)
    for (auto& d : warm_real) d = rng.open_uniform();

  std::vector<Candidate> cand;
  for (std::size_t round = 0;; ++round) {
    out.rounds = round;
    if (unit_propagation(st, &rng).contradiction) {
      out.status = DecimateStatus::contradiction;
      out.fail_step = round;
      return out;
    }
    if (st.satisfied()) break;
    Residual res = build_residual(f, st, offset);
    const FactorGraph fg(res.formula);
    MpParams mp = params.mp;
    mp.seed = RngSeed{hash_words({params.seed.base, params.seed.stream, round}), rng()};

    cand.clear();
    int sweeps = 0;
    auto push = [&](int v, double score, int value) {
      cand.push_back({score, rng(), v, value != 0 ? value : rng.spin()});
    };
    if (params.guide == Guide::bp) {
      std::vector<double> init(res.slots.size());
      for (std::size_t e = 0; e < init.size(); ++e) init[e] = params.warm_start ? warm_real[res.slots[e]] : 0.0;
      const BpResult r = bp_run(fg, mp, &init);
      sweeps = r.sweeps;
      if (!r.converged) {
        out.status = DecimateStatus::non_convergence;
        out.fail_step = round;
        return out;
      }
      for (std::size_t e = 0; e < init.size(); ++e) warm_real[res.slots[e]] = r.messages.u[e];
      for (int i = 0; i < f.n_vars; ++i)
        if (fg.var_degree(i) > 0) push(i, std::fabs(r.fields[i]), r.fields[i] > 0 ? 1 : (r.fields[i] < 0 ? -1 : 0));
    } else if (params.guide == Guide::wp) {
      std::vector<std::uint8_t> init(res.slots.size());
      for (std::size_t e = 0; e < init.size(); ++e) init[e] = params.warm_start ? warm_bits[res.slots[e]] : 0;
      const WpResult r = wp_run(fg, mp, &init);
      sweeps = r.sweeps;
      if (!r.converged) {
        out.status = DecimateStatus::non_convergence;
        out.fail_step = round;
        return out;
      }
      if (r.contradiction) {
        out.status = DecimateStatus::contradiction;
        out.fail_step = round;
        return out;
      }
      for (std::size_t e = 0; e < init.size(); ++e) warm_bits[res.slots[e]] = r.messages.u_hat[e];
      for (int i = 0; i < f.n_vars; ++i)
        if (fg.var_degree(i) > 0) push(i, std::abs(r.fields[i]), r.fields[i] > 0 ? 1 : (r.fields[i] < 0 ? -1 : 0));
    } else {
      std::vector<double> init(res.slots.size());
      for (std::size_t e = 0; e < init.size(); ++e)
        init[e] = params.warm_start ? warm_real[res.slots[e]] : rng.open_uniform();
      const SpResult r = sp_run(fg, mp, SpInit::zero, &init);
      sweeps = r.sweeps;
      if (!r.converged) {
        out.status = DecimateStatus::non_convergence;
        out.fail_step = round;
        return out;
      }
      if (r.contradiction || r.contradiction_events > 0) {
        out.status = DecimateStatus::contradiction;
        out.fail_step = round;
        return out;
      }
      for (std::size_t e = 0; e < init.size(); ++e) warm_real[res.slots[e]] = r.messages.delta[e];
      for (int i = 0; i < f.n_vars; ++i) {
        if (fg.var_degree(i) == 0) continue;
        const BiasTriplet& b = r.biases[i];
        push(i, std::fabs(b.plus - b.minus), b.plus > b.minus ? 1 : (b.plus < b.minus ? -1 : 0));
      }
    }
    // Highest score first, ties in random order.
    auto better = [](const Candidate& a, const Candidate& b) {
      return a.score != b.score ? a.score > b.score : a.key < b.key;
    };
    const double top = std::max_element(cand.begin(), cand.end(), [&](auto& a, auto& b) { return better(b, a); })->score;
    if (params.guide == Guide::sp && top < params.trivial_threshold) {
      if (!params.fallback) {
        out.status = DecimateStatus::fallback_failed;
        out.fail_step = round;
        return out;
      }
      out.used_fallback = true;
      WalkOptions wo;
      wo.record = false;
      wo.initial = complete(st, rng);
      const auto budget = static_cast<std::uint64_t>(params.walk_steps_per_clause * double(res.formula.clauses.size()));
      const WalkOutcome w = focused_walk(res.formula, params.walk, std::max<std::uint64_t>(budget, 1), RngSeed{rng(), rng()}, wo);
      out.walk_steps = w.steps;
      if (w.status != WalkStatus::solution) {
        out.status = DecimateStatus::fallback_failed;
        out.fail_step = round;
        return out;
      }
      Assignment a = w.assignment;
      for (int i = 0; i < f.n_vars; ++i)
        if (st.value(i) != 0) a[i] = static_cast<std::int8_t>(st.value(i));
      if (energy(f, a) != 0) throw std::logic_error("decimation certificate check failed");
      out.assignment = std::move(a);
      out.status = DecimateStatus::sat;
      return out;
    }
    std::size_t count = 1;
    if (params.block_fraction > 0.0)
      count = std::max<std::size_t>(1, static_cast<std::size_t>(params.block_fraction * double(res.vars)));
    count = std::min(count, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(count), cand.end(), better);
    for (std::size_t j = 0; j < count; ++j) {
      const Candidate& c = cand[j];
      st.assign(c.var, c.value);
      ++out.heuristic_picks;
      if (params.log_steps)
        out.log.push_back({round, c.var, c.value, c.score, res.vars, res.formula.clauses.size(), sweeps});
    }
  }
  out.assignment = complete(st, rng);
  if (energy(f, out.assignment) != 0) throw std::logic_error("decimation certificate check failed");
  out.status = DecimateStatus::sat;
  return out;
}

}  // namespace

DecimateResult mp_decimate(const CnfFormula& f, const DecimateParams& params) {
  validate(f);
  if (params.block_fraction < 0.0 || params.block_fraction >= 1.0)
    throw std::invalid_argument("block_fraction must lie in [0,1)");
  if (params.restarts < 0) throw std::invalid_argument("restarts must be non-negative");
  const Rng root(params.seed);
  DecimateResult r;
  for (int attempt = 0; attempt <= params.restarts; ++attempt) {
    r = decimate_once(f, params, root.split(static_cast<std::uint64_t>(attempt)));
    r.attempts = attempt + 1;
    if (r.sat()) break;
  }
  return r;
}

PlantedWpResult planted_wp_experiment(int n, double alpha, int k, RngSeed seed, const PlantedWpParams& params) {
  const GeneratedInstance inst = gen_formula({EnsembleKind::planted_ksat, n, k, alpha, 1.0, seed});
  const CnfFormula& f = inst.cnf();
  const Assignment& planted = *inst.planted;
  Rng rng = Rng(seed).split(1);
  PlantedWpResult out;
  out.n = n;
  out.alpha = alpha;

  const FactorGraph fg(f);
  const std::vector<std::uint8_t> init(fg.num_edges(), 1);
  MpParams mp = params.mp;
  mp.seed = RngSeed{hash_words({seed.base, seed.stream, 2}), 0};
  const WpResult wp = wp_run(fg, mp, &init);
  out.converged = wp.converged;
  out.sweeps = wp.sweeps;
  out.contradiction = wp.contradiction;

  SearchState st(f);
  for (int i = 0; i < n; ++i) {
    const int h = wp.fields[i];
    if (h == 0) continue;
    const int s = h > 0 ? 1 : -1;
    ++out.frozen;
    if (s == planted[i]) ++out.frozen_correct;
    else ++out.wrong_sign;
    st.assign(i, s);
    ++out.residual_work;
  }
  const UpResult up = unit_propagation(st, &rng);
  out.residual_work += up.forced.size();
  out.residual_vars = st.unset_vars().size();
  out.residual_clauses = st.active_clauses();
  bool ok = !up.contradiction;
  out.residual_method = "up";
  while (ok && !st.satisfied()) {
    out.residual_method = "guc";
    const Literal l = choose_split(st, SplitHeuristic::guc, rng);
    st.assign(l.var, l.sign);
    ++out.residual_work;
    const UpResult u = unit_propagation(st, &rng);
    out.residual_work += u.forced.size();
    ok = !u.contradiction;
  }
  if (ok) {
    out.assignment = complete(st, rng);
  } else {
    out.residual_method = "walk";
    WalkOptions wo;
    wo.record = false;
    Assignment start(n);
    for (int i = 0; i < n; ++i)
      start[i] = static_cast<std::int8_t>(wp.fields[i] > 0 ? 1 : (wp.fields[i] < 0 ? -1 : rng.spin()));
    wo.initial = start;
    const auto budget = static_cast<std::uint64_t>(params.walk_steps_per_clause * double(f.clauses.size()));
    const WalkOutcome w = focused_walk(f, params.walk, std::max<std::uint64_t>(budget, 1), RngSeed{rng(), rng()}, wo);
    out.residual_work += w.steps;
    if (w.status != WalkStatus::solution) return out;
    out.assignment = w.assignment;
  }
  if (energy(f, out.assignment) != 0) throw std::logic_error("planted residual certificate check failed");
  out.residual_solved = true;
  return out;
}

SpOnsetScan sp_onset_scan(int k, int n, const std::vector<double>& alphas, RngSeed seed, const MpParams& params) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha grid");
  if (!std::is_sorted(alphas.begin(), alphas.end())) throw std::invalid_argument("alpha grid must be sorted");
  SpOnsetScan scan;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const RngSeed inst_seed{hash_words({seed.base, seed.stream, j, 0}), 0};
    const CnfFormula f = gen_formula({EnsembleKind::ksat, n, k, alphas[j], 1.0, inst_seed}).cnf();
    MpParams mp = params;
    mp.seed = RngSeed{hash_words({seed.base, seed.stream, j, 1}), 0};
    const SpResult r = sp_run(FactorGraph(f), mp, SpInit::random_uniform);
    SpOnsetPoint p;
    p.alpha = alphas[j];
    p.converged = r.converged;
    p.sweeps = r.sweeps;
    p.nontrivial_fraction = r.nontrivial_fraction;
    p.nontrivial = !r.converged || (1.0 - r.nontrivial_fraction) < kTrivialMass;
    scan.points.push_back(p);
  }
  const auto first = std::find_if(scan.points.begin(), scan.points.end(), [](auto& p) { return p.nontrivial; });
  if (first == scan.points.end()) {
    scan.bracket_lo = scan.bracket_hi = alphas.back();
    scan.alpha_d = std::numeric_limits<double>::quiet_NaN();
  } else if (first == scan.points.begin()) {
    scan.bracket_lo = scan.bracket_hi = alphas.front();
    scan.alpha_d = std::numeric_limits<double>::quiet_NaN();
  } else {
    scan.bracket_lo = (first - 1)->alpha;
    scan.bracket_hi = first->alpha;
    scan.alpha_d = 0.5 * (scan.bracket_lo + scan.bracket_hi);
  }
  return scan;
}

}  // namespace rcsp
