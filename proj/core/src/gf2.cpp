#include "rcsp/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace rcsp {

Gf2Echelon::Gf2Echelon(const XorFormula& xf) : n_(xf.n_vars), words_((xf.n_vars + 63) / 64) {
  const std::size_t m = xf.equations.size();
  std::vector<std::uint64_t> a(m * words_, 0);
  std::vector<std::uint8_t> b(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& e = xf.equations[r];
    for (int v : e.vars) a[r * words_ + (v >> 6)] ^= 1ULL << (v & 63);
    b[r] = static_cast<std::uint8_t>(spin_to_bit(e.parity));
  }
  // Gauss–Jordan: each pivot column is cleared from every other row.
  std::size_t rank = 0;
  for (int c = 0; c < n_ && rank < m; ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t bit = 1ULL << (c & 63);
    std::size_t piv = rank;
    while (piv < m && !(a[piv * words_ + w] & bit)) ++piv;
    if (piv == m) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < words_; ++j) std::swap(a[piv * words_ + j], a[rank * words_ + j]);
      std::swap(b[piv], b[rank]);
    }
    const std::uint64_t* prow = &a[rank * words_];
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || !(a[r * words_ + w] & bit)) continue;
      std::uint64_t* row = &a[r * words_];
      for (std::size_t j = 0; j < words_; ++j) row[j] ^= prow[j];
      b[r] ^= b[rank];
    }
    pivots_.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (b[r]) consistent_ = false;
  a.resize(rank * words_);
  b.resize(rank);
  rows_ = std::move(a);
  rhs_ = std::move(b);
  std::vector<char> is_pivot(n_, 0);
  for (int c : pivots_) is_pivot[c] = 1;
  for (int c = 0; c < n_; ++c)
    if (!is_pivot[c]) free_.push_back(c);
}

Assignment Gf2Echelon::solution_from_free_bits(const std::vector<std::uint8_t>& free_bits) const {
  if (!consistent_) throw std::logic_error("inconsistent GF(2) system has no solution");
  if (free_bits.size() != free_.size()) throw std::invalid_argument("wrong number of free bits");
  std::vector<std::uint64_t> x(words_, 0);
  for (std::size_t j = 0; j < free_.size(); ++j)
    if (free_bits[j]) x[free_[j] >> 6] |= 1ULL << (free_[j] & 63);
  // Reduced rows have a single pivot, so each pivot value is independent.
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    unsigned parity = rhs_[r];
    const std::uint64_t* row = &rows_[r * words_];
    for (std::size_t j = 0; j < words_; ++j) parity ^= std::popcount(row[j] & x[j]) & 1U;
    const int c = pivots_[r];
    if (parity) x[c >> 6] |= 1ULL << (c & 63);
  }
  Assignment s(n_);
  for (int i = 0; i < n_; ++i) s[i] = static_cast<std::int8_t>(bit_to_spin((x[i >> 6] >> (i & 63)) & 1U));
  return s;
}

Assignment Gf2Echelon::particular_solution() const {
  return solution_from_free_bits(std::vector<std::uint8_t>(free_.size(), 0));
}

Assignment Gf2Echelon::sample_solution(Rng& rng) const {
  std::vector<std::uint8_t> bits(free_.size());
  for (auto& v : bits) v = rng.coin() ? 1 : 0;
  return solution_from_free_bits(bits);
}

Gf2Result gf2_solve(const XorFormula& xf) {
  const Gf2Echelon ech(xf);
  Gf2Result r;
  r.rank = ech.rank();
  r.nullity = ech.nullity();
  r.satisfiable = ech.consistent();
  if (r.satisfiable) r.solution = ech.particular_solution();
  return r;
}

}  // namespace rcsp
