#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rcsp/formula.hpp"

namespace rcsp {

/// Bipartite variable/clause graph. Edges are stored clause-major: the
/// edges of clause a are the contiguous range [clause_begin(a), clause_end(a)).
/// Each variable keeps the list of its edge ids.
class FactorGraph {
 public:
  FactorGraph() = default;
  explicit FactorGraph(const CnfFormula& f);

  int num_vars() const { return n_vars_; }
  int num_clauses() const { return static_cast<int>(clause_start_.size()) - 1; }
  std::size_t num_edges() const { return edge_var_.size(); }

  std::size_t clause_begin(int a) const { return clause_start_[a]; }
  std::size_t clause_end(int a) const { return clause_start_[a + 1]; }
  int clause_degree(int a) const { return static_cast<int>(clause_end(a) - clause_begin(a)); }

  /// Edge ids incident to variable i (the set ∂i, seen from i).
  std::span<const std::size_t> var_edges(int i) const {
    return {var_edge_list_.data() + var_start_[i], var_start_[i + 1] - var_start_[i]};
  }
  int var_degree(int i) const { return static_cast<int>(var_start_[i + 1] - var_start_[i]); }

  int edge_var(std::size_t e) const { return edge_var_[e]; }
  int edge_clause(std::size_t e) const { return edge_clause_[e]; }
  /// Literal sign on the edge; the coupling J is its negation.
  int edge_sign(std::size_t e) const { return edge_sign_[e]; }

  /// Variables of clause a (∂a).
  std::vector<int> clause_vars(int a) const;
  /// Clauses b != a containing the variable of edge e with the same sign
  /// as in a (same_sign = true), or with the opposite sign.
  std::vector<int> signed_neighbors(std::size_t e, bool same_sign) const;

  CnfFormula to_formula() const;

 private:
  int n_vars_ = 0;
  std::vector<std::size_t> clause_start_{0};
  std::vector<int> edge_var_;
  std::vector<int> edge_clause_;
  std::vector<int> edge_sign_;
  std::vector<std::size_t> var_start_{0};
  std::vector<std::size_t> var_edge_list_;
};

inline FactorGraph to_factor_graph(const CnfFormula& f) { return FactorGraph(f); }

}  // namespace rcsp
