#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/gf2.hpp"
#include "rcsp/xorsat.hpp"

namespace rcsp {
namespace {

XorFormula random_xor(double alpha, int n, std::uint64_t seed) {
  return gen_formula({EnsembleKind::xorsat, n, 3, alpha, 1.0, RngSeed{seed, 0}}).xorf();
}

std::vector<int> core_variables(const CoreDecomposition& d) {
  std::set<int> s;
  for (const auto& e : d.core.equations) s.insert(e.vars.begin(), e.vars.end());
  return {s.begin(), s.end()};
}

TEST(Gf2, TinySystems) {
  XorFormula a;
  a.n_vars = 2;
  a.equations = {{{0, 1}, -1}};
  const Gf2Result r = gf2_solve(a);
  EXPECT_TRUE(r.satisfiable);
  EXPECT_EQ(r.rank, 1);
  EXPECT_EQ(r.nullity, 1);
  EXPECT_EQ(energy(a, r.solution), 0u);
  XorFormula b;
  b.n_vars = 1;
  b.equations = {{{0}, 1}, {{0}, -1}};
  EXPECT_FALSE(gf2_solve(b).satisfiable);
}

TEST(Gf2, CountsMatchEnumeration) {
  Rng rng(RngSeed{21, 0});
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng.below(17));
    const int k = 1 + static_cast<int>(rng.below(std::min(n, 4)));
    const XorFormula f = test::small_random_xor(rng, n, k, constraint_count(0.4 + rng.uniform(), n));
    const Gf2Result r = gf2_solve(f);
    const auto e = test::enumerate(f);
    ASSERT_EQ(r.satisfiable ? (std::uint64_t{1} << r.nullity) : 0u, e.count);
    if (r.satisfiable) EXPECT_EQ(energy(f, r.solution), 0u);
  }
}

TEST(Gf2, WideSystems) {
  const XorFormula f = random_xor(0.5, 3000, 22);
  const Gf2Echelon g(f);
  ASSERT_TRUE(g.consistent());
  EXPECT_EQ(g.rank() + g.nullity(), 3000);
  Rng rng(RngSeed{22, 1});
  for (int s = 0; s < 5; ++s) EXPECT_EQ(energy(f, g.sample_solution(rng)), 0u);
  EXPECT_EQ(energy(f, g.particular_solution()), 0u);
}

TEST(Gf2, SamplesAreUniform) {
  XorFormula f;
  f.n_vars = 4;
  f.equations = {{{0, 1, 2}, 1}};
  const Gf2Echelon g(f);
  Rng rng(RngSeed{23, 0});
  std::map<std::vector<std::int8_t>, int> hist;
  for (int s = 0; s < 8000; ++s) ++hist[g.sample_solution(rng)];
  EXPECT_EQ(hist.size(), 8u);
  for (const auto& [a, c] : hist) EXPECT_NEAR(c, 1000, 150);
}

TEST(LeafRemoval, AllLeavesGiveEmptyCore) {
  XorFormula f;
  f.n_vars = 6;
  f.equations = {{{0, 1, 2}, 1}, {{3, 4, 5}, -1}};
  const CoreDecomposition d = leaf_removal(f);
  EXPECT_TRUE(d.core.equations.empty());
  EXPECT_EQ(d.t_star, 2u);
}

TEST(LeafRemoval, DoubledEquationIsItsOwnCore) {
  XorFormula f;
  f.n_vars = 3;
  f.equations = {{{0, 1, 2}, 1}, {{0, 1, 2}, -1}};
  const CoreDecomposition d = leaf_removal(f);
  EXPECT_EQ(d.core.equations.size(), 2u);
  EXPECT_EQ(d.core_vars, 3);
}

TEST(LeafRemoval, CoreInvariants) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const XorFormula f = random_xor(0.7 + 0.02 * s, 500, 24 + s);
    const CoreDecomposition d = leaf_removal(f);
    std::map<int, int> occ;
    for (const auto& e : d.core.equations)
      for (int v : e.vars) ++occ[v];
    for (const auto& [v, c] : occ) EXPECT_GE(c, 2);
    EXPECT_EQ(static_cast<int>(occ.size()), d.core_vars);
    EXPECT_EQ(d.removed.size(), d.t_star);
    EXPECT_EQ(d.core_ids.size() + d.removed.size(), f.equations.size());
    Rng order(RngSeed{s, 9});
    EXPECT_EQ(leaf_removal(f, &order).core_ids, d.core_ids);
  }
}

TEST(LeafRemoval, CoreAppearsAboveThreshold) {
  int empty_low = 0, full_high = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    empty_low += leaf_removal(random_xor(0.7, 10000, 100 + s)).core_vars == 0;
    full_high += leaf_removal(random_xor(0.9, 10000, 300 + s)).core_vars > 0;
  }
  EXPECT_GE(empty_low, 95);
  EXPECT_GE(full_high, 95);
}

TEST(Entropy, EmptyCoreBelowThreshold) {
  const XorFormula f = random_xor(0.6, 2000, 31);
  const auto e = entropy_decomposition(f);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->sigma_log2, 0);
  if (gf2_solve(f).rank == static_cast<int>(f.equations.size()))
    EXPECT_NEAR(e->s(), (1.0 - 0.6) * std::numbers::ln2, 1e-12);
  EXPECT_DOUBLE_EQ(e->s(), e->s_int());
}

TEST(Entropy, ClusteredIdentity) {
  const XorFormula f = random_xor(0.85, 2000, 32);
  const auto e = entropy_decomposition(f);
  ASSERT_TRUE(e);
  EXPECT_GT(e->sigma_log2, 0);
  EXPECT_EQ(e->total_log2, e->sigma_log2 + e->internal_log2);
  EXPECT_EQ(e->total_log2, gf2_solve(f).nullity);
}

TEST(Entropy, MatchesEnumeration) {
  Rng rng(RngSeed{33, 0});
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(rng.below(15));
    const XorFormula f = test::small_random_xor(rng, n, 3, constraint_count(0.5 + 0.6 * rng.uniform(), n));
    const auto cnt = test::enumerate(f).count;
    const auto e = entropy_decomposition(f);
    ASSERT_EQ(e.has_value(), cnt > 0);
    if (e) EXPECT_DOUBLE_EQ(e->s(), std::log(double(cnt)) / n);
  }
}

TEST(Reconstruction, ExtensionsCountedExactly) {
  Rng rng(RngSeed{34, 0});
  int checked = 0;
  for (int t = 0; t < 300 && checked < 40; ++t) {
    const int n = 8 + static_cast<int>(rng.below(13));
    const XorFormula f = test::small_random_xor(rng, n, 3, constraint_count(0.8 + 0.3 * rng.uniform(), n));
    const CoreDecomposition d = leaf_removal(f);
    const auto split = entropy_decomposition(f, d);
    if (!split || d.core.equations.empty()) continue;
    ++checked;
    const std::vector<int> cv = core_variables(d);
    const auto e = test::enumerate(f, true);
    std::map<std::uint64_t, std::uint64_t> per_core;
    for (std::uint64_t x : e.solutions) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < cv.size(); ++j) key |= ((x >> cv[j]) & 1U) << j;
      ++per_core[key];
    }
    for (const auto& [key, count] : per_core) {
      Assignment core(n, 1);
      for (std::size_t j = 0; j < cv.size(); ++j) core[cv[j]] = ((key >> j) & 1U) ? 1 : -1;
      const Reconstruction r = reconstruct_solution(f, d, core, rng);
      EXPECT_EQ(std::uint64_t{1} << r.internal_log2, count);
      EXPECT_EQ(energy(f, r.solution), 0u);
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Reconstruction, EmptyCoreAndBadCore) {
  const XorFormula f = random_xor(0.5, 1000, 35);
  const CoreDecomposition d = leaf_removal(f);
  ASSERT_TRUE(d.core.equations.empty());
  Rng rng(RngSeed{35, 1});
  EXPECT_EQ(energy(f, reconstruct_solution(f, d, Assignment(1000, 1), rng).solution), 0u);

  XorFormula g;
  g.n_vars = 3;
  g.equations = {{{0, 1, 2}, 1}, {{0, 1, 2}, 1}};
  const CoreDecomposition dg = leaf_removal(g);
  EXPECT_THROW(reconstruct_solution(g, dg, Assignment{-1, 1, 1}, rng), std::invalid_argument);
}

TEST(Overlaps, SingleClusterHistogramsAgree) {
  const XorFormula f = random_xor(0.6, 2000, 36);
  const OverlapStats o = cluster_overlap_stats(f, 2000, RngSeed{36, 1}, 20);
  EXPECT_NEAR(o.intra_mean, o.inter_mean, 0.01);
}

TEST(Overlaps, ClustersAreSeparated) {
  const XorFormula f = random_xor(0.87, 2000, 37);
  ASSERT_TRUE(entropy_decomposition(f));
  const OverlapStats o = cluster_overlap_stats(f, 1000, RngSeed{37, 1}, 40);
  EXPECT_GT(o.intra_mean - o.inter_mean, 0.1);
  const double lo_intra = *std::min_element(o.intra_samples.begin(), o.intra_samples.end());
  const double hi_inter = *std::max_element(o.inter_samples.begin(), o.inter_samples.end());
  EXPECT_GT(lo_intra, hi_inter - 0.2);
}

TEST(Overlaps, MeansMatchExhaustivePairs) {
  Rng rng(RngSeed{38, 0});
  for (int t = 0, done = 0; t < 200 && done < 5; ++t) {
    const int n = 12 + static_cast<int>(rng.below(5));
    const XorFormula f = test::small_random_xor(rng, n, 3, constraint_count(0.9, n));
    const CoreDecomposition d = leaf_removal(f);
    if (!entropy_decomposition(f, d) || d.core.equations.empty()) continue;
    ++done;
    const std::vector<int> cv = core_variables(d);
    const auto e = test::enumerate(f, true);
    std::map<std::uint64_t, std::vector<Assignment>> clusters;
    for (std::uint64_t x : e.solutions) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < cv.size(); ++j) key |= ((x >> cv[j]) & 1U) << j;
      clusters[key].push_back(assignment_from_bits(x, n));
    }
    double intra = 0.0, inter = 0.0;
    std::size_t ni = 0, nx = 0;
    for (const auto& [k1, c1] : clusters)
      for (const auto& [k2, c2] : clusters)
        for (const auto& a : c1)
          for (const auto& b : c2) {
            if (k1 == k2) {
              intra += overlap(a, b);
              ++ni;
            }
          }
    for (const auto& a : e.solutions)
      for (const auto& b : e.solutions) {
        inter += overlap(assignment_from_bits(a, n), assignment_from_bits(b, n));
        ++nx;
      }
    const OverlapStats o = cluster_overlap_stats(f, 4000, RngSeed{38, std::uint64_t(t)}, 10);
    EXPECT_NEAR(o.intra_mean, intra / ni, 0.06);
    EXPECT_NEAR(o.inter_mean, inter / nx, 0.06);
  }
}

}  // namespace
}  // namespace rcsp
