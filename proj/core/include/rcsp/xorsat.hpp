#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

/// One leaf-removal step: `equation` was removed because `leaf` occurred
/// only there. `freed` lists the variables whose occurrence count dropped to
/// zero with it (the leaf included), so d_n = freed.size().
struct LeafStep {
  std::size_t equation = 0;
  int leaf = 0;
  std::vector<int> freed;
};

struct CoreDecomposition {
  XorFormula core;                      // the 2-core, on the original variable indices
  std::vector<std::size_t> core_ids;    // original ids of the core equations, ascending
  std::vector<LeafStep> removed;        // in removal order
  std::size_t t_star = 0;               // number of removal steps
  int isolated_vars = 0;                // N - |V0|
  int core_vars = 0;                    // |V'|
};

/// Peels leaf variables until every remaining variable occurs at least twice.
/// With `order_rng`, leaves are taken in random order; otherwise FIFO.
CoreDecomposition leaf_removal(const XorFormula& xf, Rng* order_rng = nullptr);

/// Entropy densities as exact counts of ln 2 (log2 of solution counts).
struct EntropySplit {
  int n = 0;
  long total_log2 = 0;     // N - rank(F)
  long sigma_log2 = 0;     // |V'| - rank(F'): log2 of the number of clusters
  long internal_log2 = 0;  // Σ (d_n - 1) + (N - |V0|)

  double s() const;
  double sigma() const;
  double s_int() const;
};

/// Returns nullopt when the formula (equivalently its core) is unsatisfiable.
/// Throws std::logic_error if the identity s = Σ + s_int fails.
std::optional<EntropySplit> entropy_decomposition(const XorFormula& xf);
std::optional<EntropySplit> entropy_decomposition(const XorFormula& xf, const CoreDecomposition& dec);

struct Reconstruction {
  Assignment solution;
  long internal_log2 = 0;  // log2 N_int: number of extensions of the core solution
};

/// Extends a core solution (values on core variables; others ignored) to a
/// uniform random full solution. Throws std::invalid_argument if the core
/// equations are not satisfied.
Reconstruction reconstruct_solution(const XorFormula& xf, const CoreDecomposition& dec,
                                    const Assignment& core_solution, Rng& rng);

/// Uniform random core solution (core variables set, others +1), or nullopt if UNSAT.
std::optional<Assignment> sample_core_solution(const CoreDecomposition& dec, Rng& rng);

double overlap(const Assignment& a, const Assignment& b);

struct OverlapStats {
  int bins = 0;
  std::vector<std::uint64_t> intra;  // same core solution
  std::vector<std::uint64_t> inter;  // independent core solutions
  std::vector<double> intra_samples;
  std::vector<double> inter_samples;
  double intra_mean = 0.0;
  double inter_mean = 0.0;

  /// Bin of an overlap in [-1, 1].
  int bin_of(double q) const;
};

/// Throws std::invalid_argument when unsatisfiable.
OverlapStats cluster_overlap_stats(const XorFormula& xf, std::size_t samples, RngSeed seed, int bins = 40);

}  // namespace rcsp
