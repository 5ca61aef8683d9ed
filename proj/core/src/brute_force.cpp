#include "rcsp/brute_force.hpp"

#include <bit>
#include <stdexcept>

namespace rcsp {

namespace {

// Truth tables of the six lowest variables across the 64 lanes of a word.
constexpr std::uint64_t kLane[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Bitsliced enumeration: lane j of word w is assignment (w << 6) | j.
// `sat(x)` receives the per-variable words and returns the solution mask.
template <class Sat>
BruteForceResult enumerate(int n, const Sat& sat, const BruteForceOptions& opt) {
  if (n > kBruteForceMaxVars)
    throw std::invalid_argument("brute force enumeration refused above 30 variables");
  BruteForceResult r;
  if (opt.marginals) r.true_counts.assign(n, 0);
  const int low = n < 6 ? n : 6;
  const std::uint64_t valid = low == 6 ? ~0ULL : ((1ULL << (1U << low)) - 1);
  const std::uint64_t words = n > 6 ? (1ULL << (n - 6)) : 1;
  std::vector<std::uint64_t> x(n);
  for (int i = 0; i < low; ++i) x[i] = kLane[i];
  for (std::uint64_t w = 0; w < words; ++w) {
    for (int i = 6; i < n; ++i) x[i] = ((w >> (i - 6)) & 1U) ? ~0ULL : 0ULL;
    const std::uint64_t mask = sat(x) & valid;
    if (!mask) continue;
    r.count += static_cast<std::uint64_t>(std::popcount(mask));
    if (opt.marginals)
      for (int i = 0; i < n; ++i) r.true_counts[i] += std::popcount(mask & x[i]);
    for (std::uint64_t m = mask; m && r.solutions.size() < opt.max_list; m &= m - 1)
      r.solutions.push_back((w << 6) | static_cast<std::uint64_t>(std::countr_zero(m)));
  }
  return r;
}

}  // namespace

BruteForceResult brute_force_solutions(const CnfFormula& f, BruteForceOptions opt) {
  return enumerate(
      f.n_vars,
      [&](const std::vector<std::uint64_t>& x) {
        std::uint64_t all = ~0ULL;
        for (const auto& c : f.clauses) {
          std::uint64_t any = 0;
          for (const auto& l : c) any |= l.sign > 0 ? x[l.var] : ~x[l.var];
          all &= any;
          if (!all) break;
        }
        return all;
      },
      opt);
}

BruteForceResult brute_force_solutions(const XorFormula& f, BruteForceOptions opt) {
  return enumerate(
      f.n_vars,
      [&](const std::vector<std::uint64_t>& x) {
        std::uint64_t all = ~0ULL;
        for (const auto& e : f.equations) {
          // Spin -1 is the false bit, so the parity of ~x must equal (J == -1).
          std::uint64_t acc = e.parity < 0 ? ~0ULL : 0ULL;
          for (int v : e.vars) acc ^= ~x[v];
          all &= ~acc;
          if (!all) break;
        }
        return all;
      },
      opt);
}

}  // namespace rcsp
