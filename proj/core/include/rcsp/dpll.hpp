#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/rng.hpp"
#include "rcsp/simplify.hpp"

namespace rcsp {

/// Set of small integers with O(1) insert, erase and uniform sampling.
class IndexSet {
 public:
  explicit IndexSet(std::size_t universe = 0) : pos_(universe, kNone) {}

  void insert(std::size_t x) {
    pos_[x] = items_.size();
    items_.push_back(x);
  }
  void erase(std::size_t x) {
    const std::size_t p = pos_[x];
    const std::size_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = kNone;
  }
  bool contains(std::size_t x) const { return pos_[x] != kNone; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t operator[](std::size_t i) const { return items_[i]; }
  std::size_t back() const { return items_.back(); }
  std::span<const std::size_t> items() const { return items_; }

 private:
  static constexpr std::size_t kNone = ~std::size_t{0};
  std::vector<std::size_t> items_;
  std::vector<std::size_t> pos_;
};

/// Partial assignment of a CNF formula with the residual formula maintained
/// incrementally: unsatisfied clauses are bucketed by their number of free
/// literals, so C_j (clauses of length j) is a bucket size.
class SearchState {
 public:
  explicit SearchState(const CnfFormula& f);

  const CnfFormula& formula() const { return f_; }
  int num_vars() const { return f_.n_vars; }
  int value(int v) const { return val_[v]; }
  const PartialAssignment& partial() const { return val_; }

  /// Number of assigned variables (T).
  std::size_t num_assigned() const { return trail_.size(); }
  const std::vector<Literal>& trail() const { return trail_; }

  /// Residual clauses of length `len` (len may exceed the bucket range: 0 then).
  std::size_t count(int len) const { return len < static_cast<int>(buckets_.size()) ? buckets_[len].size() : 0; }
  std::span<const std::size_t> clauses_of_length(int len) const;
  /// Residual (unsatisfied) clauses of any length.
  std::size_t active_clauses() const { return active_; }
  /// Largest residual clause length.
  int max_length() const { return static_cast<int>(buckets_.size()) - 1; }
  bool conflict() const { return !buckets_[0].empty(); }
  bool satisfied() const { return active_ == 0; }

  /// Free literals of an unsatisfied clause.
  void free_literals(std::size_t clause, std::vector<Literal>& out) const;
  const IndexSet& unset_vars() const { return unset_; }

  /// Sets variable v (must be unset) to spin s.
  void assign(int v, int s);
  /// Undoes assignments until only `trail_size` remain.
  void undo(std::size_t trail_size);

  ResidualFormula residual() const;

 private:
  void move_bucket(std::size_t c, int from, int to);

  const CnfFormula& f_;
  std::vector<std::size_t> occ_start_;
  std::vector<std::pair<std::uint32_t, int>> occ_;  // (clause, sign)
  PartialAssignment val_;
  std::vector<int> free_;
  std::vector<int> true_;
  std::vector<IndexSet> buckets_;
  IndexSet unset_;
  std::size_t active_ = 0;
  std::vector<Literal> trail_;
};

struct UpResult {
  bool contradiction = false;
  std::vector<Literal> forced;
};

/// Repeatedly satisfies unit clauses until none is left or a clause is
/// emptied. Units are taken uniformly at random when `order` is given,
/// otherwise last-in first.
UpResult unit_propagation(SearchState& st, Rng* order = nullptr);

enum class SplitHeuristic { uc, guc };
SplitHeuristic parse_split_heuristic(const std::string& s);
std::string to_string(SplitHeuristic h);

/// Picks the next free choice. Requires a non-empty residual formula
/// without unit clauses for guc; uc picks any unset variable.
Literal choose_split(const SearchState& st, SplitHeuristic h, Rng& rng);

struct PlanePoint {
  double t = 0.0;      // T / N
  double p = 0.0;      // fraction of residual clauses with length >= 3
  double alpha = 0.0;  // residual (length >= 2) clauses per unassigned variable
  std::size_t c1 = 0, c2 = 0, c3 = 0;  // c3 counts every length >= 3
};

struct NoBacktrackResult {
  bool success = false;
  Assignment assignment;  // complete and verified when success
  std::vector<PlanePoint> trajectory;
  std::size_t free_choices = 0;
  std::size_t failure_T = 0;  // assigned variables when the contradiction appeared
};

struct NoBacktrackOptions {
  /// Trajectory stride in assigned variables; 0 selects max(1, N/500).
  std::size_t stride = 0;
  bool record = true;
};

NoBacktrackResult run_no_backtrack(const CnfFormula& f, SplitHeuristic h, RngSeed seed,
                                   const NoBacktrackOptions& opt = {});

enum class DpllOutcome { sat, unsat, budget };
std::string to_string(DpllOutcome o);

struct TreeStats {
  std::uint64_t splits = 0;          // free choices (both branches of a node count once)
  std::uint64_t up_steps = 0;        // unit propagations
  std::uint64_t contradictions = 0;  // leaves
  std::uint64_t backtracks = 0;      // second branches taken
  double t_G = 1.0;                  // depth fraction of the highest backtrack point
  DpllOutcome outcome = DpllOutcome::budget;
};

struct DpllResult {
  TreeStats stats;
  Assignment assignment;  // verified when outcome == sat
};

DpllResult dpll_complete(const CnfFormula& f, SplitHeuristic h, RngSeed seed, std::uint64_t node_budget);

struct TauFit {
  double tau = 0.0;
  double tau_stderr = 0.0;
  double intercept = 0.0;
  std::vector<int> sizes;
  std::vector<double> median_splits;
  std::vector<double> median_t_G;  // over satisfiable runs (NaN if none)
  std::size_t budget_hits = 0;
};

/// Least-squares slope of ln(median splits) against N over random k-SAT samples.
TauFit tree_size_exponent(int k, double alpha, const std::vector<int>& sizes, int samples, SplitHeuristic h,
                          RngSeed seed, std::uint64_t node_budget = 100000000);

/// Exact 2-SAT decision by strongly connected components of the implication
/// graph. Clauses of length 1 are accepted. Throws std::invalid_argument on
/// longer clauses.
std::optional<Assignment> two_sat_solve(const CnfFormula& f);

}  // namespace rcsp
