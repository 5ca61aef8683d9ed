#include "rcsp/message_passing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcsp {

namespace {

// ln(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log1p(std::exp(b - a));
}

std::vector<int> sweep_order(int m, const MpParams& p, Rng& rng) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (p.order == UpdateOrder::random_permutation)
    for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return order;
}

void check_params(const MpParams& p) {
  if (!(p.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (!(p.damping >= 0 && p.damping < 1)) throw std::invalid_argument("damping must lie in [0,1)");
  if (p.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be positive");
}

}  // namespace

BpResult bp_run(const FactorGraph& fg, const MpParams& params, const std::vector<double>* init_u) {
  check_params(params);
  const int n = fg.num_vars(), m = fg.num_clauses();
  const std::size_t ne = fg.num_edges();
  BpResult r;
  auto& u = r.messages.u;
  u.assign(ne, 0.0);
  if (init_u) {
    if (init_u->size() != ne) throw std::invalid_argument("warm start has wrong size");
    u = *init_u;
  }
  std::vector<double> H(n, 0.0);
  for (std::size_t e = 0; e < ne; ++e) H[fg.edge_var(e)] += fg.edge_sign(e) * u[e];
  Rng rng(params.seed);
  std::vector<double> logt, pre, suf;
  auto cavity_field = [&](std::size_t e) {
    const double h = fg.edge_sign(e) * H[fg.edge_var(e)] - u[e];
    return std::clamp(h, -kBpFieldCap, kBpFieldCap);
  };
  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    r.sweeps = sweep;
    double max_change = 0.0;
    for (int a : sweep_order(m, params, rng)) {
      const std::size_t b = fg.clause_begin(a), d = fg.clause_end(a) - b;
      logt.resize(d);
      pre.assign(d + 1, 0.0);
      suf.assign(d + 1, 0.0);
      // ln((1 - tanh h)/2) = -softplus(2h)
      for (std::size_t j = 0; j < d; ++j) logt[j] = -softplus(2.0 * cavity_field(b + j));
      for (std::size_t j = 0; j < d; ++j) pre[j + 1] = pre[j] + logt[j];
      for (std::size_t j = d; j-- > 0;) suf[j] = suf[j + 1] + logt[j];
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t e = b + j;
        const double prod = std::min(std::exp(pre[j] + suf[j + 1]), kBpProductCap);
        const double fresh = -0.5 * std::log1p(-prod);
        const double next = (1.0 - params.damping) * fresh + params.damping * u[e];
        max_change = std::max(max_change, std::fabs(next - u[e]));
        H[fg.edge_var(e)] += fg.edge_sign(e) * (next - u[e]);
        u[e] = next;
      }
    }
    if (max_change < params.epsilon) {
      r.converged = true;
      break;
    }
  }
  // Recompute the fields exactly to drop accumulated rounding.
  std::fill(H.begin(), H.end(), 0.0);
  for (std::size_t e = 0; e < ne; ++e) H[fg.edge_var(e)] += fg.edge_sign(e) * u[e];
  r.messages.h.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) r.messages.h[e] = cavity_field(e);
  r.fields = H;
  r.marginals.resize(n);
  for (int i = 0; i < n; ++i) r.marginals[i] = 0.5 * (1.0 + std::tanh(H[i]));

  // Bethe decomposition: clause, variable and edge normalizations.
  double log_z = 0.0;
  for (int a = 0; a < m; ++a) {
    double l = 0.0;
    for (std::size_t e = fg.clause_begin(a); e < fg.clause_end(a); ++e) l -= softplus(2.0 * r.messages.h[e]);
    log_z += std::log1p(-std::min(std::exp(l), kBpProductCap));
  }
  for (int i = 0; i < n; ++i) {
    double lp = 0.0, lm = 0.0;
    for (std::size_t e : fg.var_edges(i)) {
      const double su = fg.edge_sign(e) * u[e];
      lp -= softplus(-2.0 * su);  // ln((1 + s tanh u)/2)
      lm -= softplus(2.0 * su);   // ln((1 - s tanh u)/2)
    }
    log_z += log_sum_exp(lp, lm);
  }
  for (std::size_t e = 0; e < ne; ++e) {
    const double x = std::tanh(r.messages.h[e]) * std::tanh(u[e]);
    log_z -= std::log(0.5 * std::max(1.0 + x, 1e-300));
  }
  r.log_z = log_z;
  r.entropy = n > 0 ? log_z / n : 0.0;
  return r;
}

WpResult wp_run(const FactorGraph& fg, const MpParams& params, const std::vector<std::uint8_t>* init_u) {
  check_params(params);
  const int n = fg.num_vars(), m = fg.num_clauses();
  const std::size_t ne = fg.num_edges();
  WpResult r;
  auto& u = r.messages.u_hat;
  u.assign(ne, 0);
  if (init_u) {
    if (init_u->size() != ne) throw std::invalid_argument("initial warnings have wrong size");
    u = *init_u;
  }
  std::vector<int> H(n, 0);
  for (std::size_t e = 0; e < ne; ++e) H[fg.edge_var(e)] += fg.edge_sign(e) * u[e];
  Rng rng(params.seed);
  std::vector<char> neg;
  auto cavity = [&](std::size_t e) { return fg.edge_sign(e) * H[fg.edge_var(e)] - u[e]; };
  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    r.sweeps = sweep;
    bool changed = false;
    for (int a : sweep_order(m, params, rng)) {
      const std::size_t b = fg.clause_begin(a), d = fg.clause_end(a) - b;
      neg.resize(d);
      std::size_t n_neg = 0;
      for (std::size_t j = 0; j < d; ++j) {
        neg[j] = cavity(b + j) < 0;
        n_neg += neg[j];
      }
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t e = b + j;
        const std::uint8_t next = (n_neg - neg[j]) == d - 1 ? 1 : 0;
        if (next != u[e]) {
          H[fg.edge_var(e)] += fg.edge_sign(e) * (int(next) - int(u[e]));
          u[e] = next;
          changed = true;
        }
      }
    }
    if (!changed) {
      r.converged = true;
      break;
    }
  }
  r.messages.h_hat.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) r.messages.h_hat[e] = cavity(e);
  r.fields = H;
  for (int i = 0; i < n; ++i) {
    bool plus = false, minus = false;
    for (std::size_t e : fg.var_edges(i))
      if (u[e]) (fg.edge_sign(e) > 0 ? plus : minus) = true;
    if (plus && minus) r.contradicted.push_back(i);
  }
  r.contradiction = !r.contradicted.empty();
  return r;
}

namespace {

constexpr double kZeroFactor = 1e-12;

// Product of factors (1 - δ) with exact bookkeeping of vanishing factors.
struct ZeroProduct {
  double prod = 1.0;
  int zeros = 0;

  void add(double f) {
    if (f < kZeroFactor) ++zeros;
    else prod *= f;
  }
  void remove(double f) {
    if (f < kZeroFactor) --zeros;
    else prod /= f;
  }
  double value() const { return zeros ? 0.0 : prod; }
  double value_without(double f) const {
    if (f < kZeroFactor) return zeros == 1 ? prod : 0.0;
    return zeros ? 0.0 : prod / f;
  }
};

}  // namespace

SpResult sp_run(const FactorGraph& fg, const MpParams& params, SpInit init, const std::vector<double>* init_delta) {
  check_params(params);
  const int n = fg.num_vars(), m = fg.num_clauses();
  const std::size_t ne = fg.num_edges();
  SpResult r;
  Rng rng(params.seed);
  auto& delta = r.messages.delta;
  if (init_delta) {
    if (init_delta->size() != ne) throw std::invalid_argument("warm start has wrong size");
    delta = *init_delta;
  } else if (init == SpInit::random_uniform) {
    delta.resize(ne);
    for (auto& d : delta) d = rng.open_uniform();
  } else {
    delta.assign(ne, 0.0);
  }
  // Per variable: products over clauses where it appears positively [0]
  // or negatively [1].
  std::vector<ZeroProduct> P(2 * static_cast<std::size_t>(n));
  auto slot = [&](std::size_t e) { return 2 * static_cast<std::size_t>(fg.edge_var(e)) + (fg.edge_sign(e) > 0 ? 0 : 1); };
  auto rebuild = [&] {
    std::fill(P.begin(), P.end(), ZeroProduct{});
    for (std::size_t e = 0; e < ne; ++e) P[slot(e)].add(1.0 - delta[e]);
  };
  auto gamma_of = [&](std::size_t e, std::size_t& events) {
    const std::size_t s = slot(e);
    const double same = P[s].value_without(1.0 - delta[e]);
    const double opp = P[s ^ 1].value();
    const double den = same + opp - same * opp;
    if (den <= 0.0) {
      ++events;
      return 0.0;
    }
    return (1.0 - opp) * same / den;
  };
  std::vector<double> g, pre, suf;
  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    r.sweeps = sweep;
    rebuild();
    double max_change = 0.0;
    for (int a : sweep_order(m, params, rng)) {
      const std::size_t b = fg.clause_begin(a), d = fg.clause_end(a) - b;
      g.resize(d);
      pre.assign(d + 1, 1.0);
      suf.assign(d + 1, 1.0);
      for (std::size_t j = 0; j < d; ++j) g[j] = gamma_of(b + j, r.contradiction_events);
      for (std::size_t j = 0; j < d; ++j) pre[j + 1] = pre[j] * g[j];
      for (std::size_t j = d; j-- > 0;) suf[j] = suf[j + 1] * g[j];
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t e = b + j;
        const double fresh = pre[j] * suf[j + 1];
        const double next = (1.0 - params.damping) * fresh + params.damping * delta[e];
        max_change = std::max(max_change, std::fabs(next - delta[e]));
        ZeroProduct& p = P[slot(e)];
        p.remove(1.0 - delta[e]);
        p.add(1.0 - next);
        delta[e] = next;
      }
    }
    if (max_change < params.epsilon) {
      r.converged = true;
      break;
    }
  }
  rebuild();
  r.messages.gamma.resize(ne);
  std::size_t final_events = 0;
  for (std::size_t e = 0; e < ne; ++e) r.messages.gamma[e] = gamma_of(e, final_events);
  r.biases.resize(n);
  for (int i = 0; i < n; ++i) {
    const double pp = P[2 * i].value(), pm = P[2 * i + 1].value();
    const double den = pp + pm - pp * pm;
    BiasTriplet& t = r.biases[i];
    if (den <= 0.0) {
      r.contradiction = true;
      t = {0.0, 0.0, 1.0};
      continue;
    }
    t.plus = (1.0 - pp) * pm / den;
    t.minus = (1.0 - pm) * pp / den;
    t.zero = std::max(0.0, 1.0 - t.plus - t.minus);
  }
  const double cut = nontrivial_cutoff(params.epsilon);
  std::size_t nontrivial = 0;
  for (double d : delta) {
    r.max_delta = std::max(r.max_delta, d);
    nontrivial += d > cut;
  }
  r.nontrivial_fraction = ne ? double(nontrivial) / double(ne) : 0.0;
  return r;
}

}  // namespace rcsp
