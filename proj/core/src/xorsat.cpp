#include "rcsp/xorsat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rcsp/gf2.hpp"

namespace rcsp {

CoreDecomposition leaf_removal(const XorFormula& xf, Rng* order_rng) {
  const int n = xf.n_vars;
  const std::size_t m = xf.equations.size();
  std::vector<int> count(n, 0);
  std::vector<std::size_t> start(n + 1, 0);
  for (const auto& e : xf.equations)
    for (int v : e.vars) ++count[v];
  for (int i = 0; i < n; ++i) start[i + 1] = start[i] + count[i];
  std::vector<std::size_t> occ(start[n]);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t a = 0; a < m; ++a)
      for (int v : xf.equations[a].vars) occ[fill[v]++] = a;
  }
  CoreDecomposition dec;
  std::vector<char> alive(m, 1);
  std::vector<int> leaves;
  for (int i = 0; i < n; ++i) {
    if (count[i] == 0) ++dec.isolated_vars;
    if (count[i] == 1) leaves.push_back(i);
  }
  std::size_t head = 0;
  while (true) {
    int leaf = -1;
    if (order_rng) {
      while (!leaves.empty()) {
        const std::size_t j = order_rng->below(leaves.size());
        const int v = leaves[j];
        leaves[j] = leaves.back();
        leaves.pop_back();
        if (count[v] == 1) {
          leaf = v;
          break;
        }
      }
    } else {
      while (head < leaves.size()) {
        const int v = leaves[head++];
        if (count[v] == 1) {
          leaf = v;
          break;
        }
      }
    }
    if (leaf < 0) break;
    std::size_t eq = m;
    for (std::size_t p = start[leaf]; p < start[leaf + 1]; ++p)
      if (alive[occ[p]]) {
        eq = occ[p];
        break;
      }
    alive[eq] = 0;
    LeafStep step{eq, leaf, {}};
    for (int v : xf.equations[eq].vars) {
      --count[v];
      if (count[v] == 0) step.freed.push_back(v);
      if (count[v] == 1) leaves.push_back(v);
    }
    dec.removed.push_back(std::move(step));
  }
  dec.t_star = dec.removed.size();
  dec.core.n_vars = n;
  for (std::size_t a = 0; a < m; ++a) {
    if (!alive[a]) continue;
    dec.core_ids.push_back(a);
    dec.core.equations.push_back(xf.equations[a]);
  }
  for (int i = 0; i < n; ++i) dec.core_vars += count[i] > 0 ? 1 : 0;
  return dec;
}

double EntropySplit::s() const { return n > 0 ? total_log2 * std::numbers::ln2 / n : 0.0; }
double EntropySplit::sigma() const { return n > 0 ? sigma_log2 * std::numbers::ln2 / n : 0.0; }
double EntropySplit::s_int() const { return n > 0 ? internal_log2 * std::numbers::ln2 / n : 0.0; }

std::optional<EntropySplit> entropy_decomposition(const XorFormula& xf) {
  return entropy_decomposition(xf, leaf_removal(xf));
}

std::optional<EntropySplit> entropy_decomposition(const XorFormula& xf, const CoreDecomposition& dec) {
  const Gf2Echelon core(dec.core);
  if (!core.consistent()) return std::nullopt;
  const Gf2Echelon full(xf);
  if (!full.consistent()) throw std::logic_error("formula UNSAT while its 2-core is SAT");
  EntropySplit out;
  out.n = xf.n_vars;
  out.total_log2 = xf.n_vars - full.rank();
  out.sigma_log2 = dec.core_vars - core.rank();
  out.internal_log2 = dec.isolated_vars;
  for (const auto& step : dec.removed) out.internal_log2 += static_cast<long>(step.freed.size()) - 1;
  if (out.total_log2 != out.sigma_log2 + out.internal_log2)
    throw std::logic_error("entropy identity violated: " + std::to_string(out.total_log2) +
                           " != " + std::to_string(out.sigma_log2) + " + " +
                           std::to_string(out.internal_log2));
  if (full.rank() != core.rank() + static_cast<int>(dec.t_star))
    throw std::logic_error("rank additivity violated by leaf removal");
  return out;
}

Reconstruction reconstruct_solution(const XorFormula& xf, const CoreDecomposition& dec,
                                    const Assignment& core_solution, Rng& rng) {
  if (static_cast<int>(core_solution.size()) != xf.n_vars)
    throw std::invalid_argument("core solution length does not match n_vars");
  for (const auto& e : dec.core.equations)
    if (!equation_satisfied(e, core_solution))
      throw std::invalid_argument("core solution violates a core equation");
  Reconstruction r;
  r.solution.assign(xf.n_vars, 0);
  for (const auto& e : dec.core.equations)
    for (int v : e.vars) r.solution[v] = core_solution[v];
  for (auto it = dec.removed.rbegin(); it != dec.removed.rend(); ++it) {
    const auto& e = xf.equations[it->equation];
    for (int v : it->freed)
      if (v != it->leaf) r.solution[v] = static_cast<std::int8_t>(rng.spin());
    int prod = 1;
    for (int v : e.vars)
      if (v != it->leaf) prod *= r.solution[v];
    r.solution[it->leaf] = static_cast<std::int8_t>(prod * e.parity);
    r.internal_log2 += static_cast<long>(it->freed.size()) - 1;
  }
  for (auto& s : r.solution) {
    if (s == 0) {
      s = static_cast<std::int8_t>(rng.spin());
      ++r.internal_log2;
    }
  }
  return r;
}

std::optional<Assignment> sample_core_solution(const CoreDecomposition& dec, Rng& rng) {
  const Gf2Echelon core(dec.core);
  if (!core.consistent()) return std::nullopt;
  return core.sample_solution(rng);
}

double overlap(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap of assignments of different length");
  if (a.empty()) return 1.0;
  long dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return static_cast<double>(dot) / static_cast<double>(a.size());
}

int OverlapStats::bin_of(double q) const {
  const int b = static_cast<int>(std::floor((q + 1.0) * 0.5 * bins));
  return std::clamp(b, 0, bins - 1);
}

OverlapStats cluster_overlap_stats(const XorFormula& xf, std::size_t samples, RngSeed seed, int bins) {
  if (bins < 1) throw std::invalid_argument("bins must be positive");
  const CoreDecomposition dec = leaf_removal(xf);
  const Gf2Echelon core(dec.core);
  if (!core.consistent()) throw std::invalid_argument("overlap statistics need a satisfiable formula");
  Rng rng(seed);
  OverlapStats st;
  st.bins = bins;
  st.intra.assign(bins, 0);
  st.inter.assign(bins, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const Assignment c1 = core.sample_solution(rng);
    const Assignment c2 = core.sample_solution(rng);
    const Assignment a = reconstruct_solution(xf, dec, c1, rng).solution;
    const Assignment b = reconstruct_solution(xf, dec, c1, rng).solution;
    const Assignment c = reconstruct_solution(xf, dec, c2, rng).solution;
    const double q_intra = overlap(a, b), q_inter = overlap(a, c);
    ++st.intra[st.bin_of(q_intra)];
    ++st.inter[st.bin_of(q_inter)];
    st.intra_samples.push_back(q_intra);
    st.inter_samples.push_back(q_inter);
    st.intra_mean += q_intra;
    st.inter_mean += q_inter;
  }
  if (samples) {
    st.intra_mean /= static_cast<double>(samples);
    st.inter_mean /= static_cast<double>(samples);
  }
  return st;
}

}  // namespace rcsp
