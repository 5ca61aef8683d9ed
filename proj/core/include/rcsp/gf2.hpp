#pragma once

#include <cstdint>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

/// Linear system over GF(2) in reduced row-echelon form, rows bit-packed
/// 64 columns per word. Bit 1 of a column means spin -1.
class Gf2Echelon {
 public:
  /// Eliminates the system of `xf`. Variables are columns.
  explicit Gf2Echelon(const XorFormula& xf);

  int num_vars() const { return n_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  int nullity() const { return n_ - rank(); }
  bool consistent() const { return consistent_; }
  const std::vector<int>& pivot_columns() const { return pivots_; }
  const std::vector<int>& free_columns() const { return free_; }

  /// Solution with all free variables at spin +1. Requires consistent().
  Assignment particular_solution() const;
  /// Uniform random solution. Requires consistent().
  Assignment sample_solution(Rng& rng) const;
  /// Solution with the given free-variable bits (one per free column).
  Assignment solution_from_free_bits(const std::vector<std::uint8_t>& free_bits) const;

 private:
  bool row_bit(std::size_t r, int c) const { return (rows_[r * words_ + (c >> 6)] >> (c & 63)) & 1U; }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;  // rank() reduced rows
  std::vector<std::uint8_t> rhs_;
  std::vector<int> pivots_;
  std::vector<int> free_;
  bool consistent_ = true;
};

struct Gf2Result {
  bool satisfiable = false;
  int rank = 0;
  int nullity = 0;  // n - rank; log2 of the solution count when satisfiable
  Assignment solution;
};

Gf2Result gf2_solve(const XorFormula& xf);

}  // namespace rcsp
