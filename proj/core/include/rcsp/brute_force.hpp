#pragma once

#include <cstdint>
#include <vector>

#include "rcsp/formula.hpp"

namespace rcsp {

inline constexpr int kBruteForceMaxVars = 30;

/// Exhaustive enumeration. Solutions are encoded as bit masks, bit i set
/// when variable i is true. `solutions` is filled only up to `max_list`.
struct BruteForceResult {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> solutions;
  /// Number of solutions with variable i true; filled on request.
  std::vector<std::uint64_t> true_counts;
};

struct BruteForceOptions {
  std::uint64_t max_list = 0;
  bool marginals = false;
};

/// Throws std::invalid_argument if n_vars > 30.
BruteForceResult brute_force_solutions(const CnfFormula& f, BruteForceOptions opt = {});
BruteForceResult brute_force_solutions(const XorFormula& f, BruteForceOptions opt = {});

inline std::uint64_t brute_force_count(const CnfFormula& f) { return brute_force_solutions(f).count; }
inline std::uint64_t brute_force_count(const XorFormula& f) { return brute_force_solutions(f).count; }

}  // namespace rcsp
