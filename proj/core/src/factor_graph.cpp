#include "rcsp/factor_graph.hpp"

namespace rcsp {

FactorGraph::FactorGraph(const CnfFormula& f) : n_vars_(f.n_vars) {
  clause_start_.reserve(f.clauses.size() + 1);
  std::vector<std::size_t> deg(f.n_vars + 1, 0);
  for (std::size_t a = 0; a < f.clauses.size(); ++a) {
    for (const auto& l : f.clauses[a]) {
      edge_var_.push_back(l.var);
      edge_clause_.push_back(static_cast<int>(a));
      edge_sign_.push_back(l.sign);
      ++deg[l.var + 1];
    }
    clause_start_.push_back(edge_var_.size());
  }
  var_start_.assign(f.n_vars + 1, 0);
  for (int i = 0; i < f.n_vars; ++i) var_start_[i + 1] = var_start_[i] + deg[i + 1];
  var_edge_list_.resize(edge_var_.size());
  std::vector<std::size_t> fill(var_start_.begin(), var_start_.end() - 1);
  for (std::size_t e = 0; e < edge_var_.size(); ++e) var_edge_list_[fill[edge_var_[e]]++] = e;
}

std::vector<int> FactorGraph::clause_vars(int a) const {
  std::vector<int> out;
  for (std::size_t e = clause_begin(a); e < clause_end(a); ++e) out.push_back(edge_var_[e]);
  return out;
}

std::vector<int> FactorGraph::signed_neighbors(std::size_t e, bool same_sign) const {
  std::vector<int> out;
  const int s = edge_sign_[e];
  for (std::size_t f : var_edges(edge_var_[e])) {
    if (f == e) continue;
    if ((edge_sign_[f] == s) == same_sign) out.push_back(edge_clause_[f]);
  }
  return out;
}

CnfFormula FactorGraph::to_formula() const {
  CnfFormula f{n_vars_, {}};
  for (int a = 0; a < num_clauses(); ++a) {
    Clause c;
    for (std::size_t e = clause_begin(a); e < clause_end(a); ++e) c.push_back({edge_var_[e], edge_sign_[e]});
    f.clauses.push_back(std::move(c));
  }
  return f;
}

}  // namespace rcsp
