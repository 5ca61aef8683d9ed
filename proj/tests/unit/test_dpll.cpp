#include <gtest/gtest.h>

#include <cmath>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "rcsp/analytic.hpp"
#include "rcsp/dpll.hpp"
#include "rcsp/generators.hpp"

namespace rcsp {
namespace {

CnfFormula ksat(int n, int k, double alpha, std::uint64_t seed) {
  return gen_formula({EnsembleKind::ksat, n, k, alpha, 1.0, RngSeed{seed, 0}}).cnf();
}

CnfFormula from(int n, std::vector<Clause> clauses) {
  CnfFormula f;
  f.n_vars = n;
  f.clauses = std::move(clauses);
  return f;
}

TEST(UnitPropagation, SingleUnit) {
  const CnfFormula f = from(1, {{{0, 1}}});
  SearchState st(f);
  const UpResult r = unit_propagation(st);
  EXPECT_FALSE(r.contradiction);
  EXPECT_EQ(st.value(0), 1);
  EXPECT_TRUE(st.satisfied());
}

TEST(UnitPropagation, OppositeUnits) {
  const CnfFormula f = from(1, {{{0, 1}}, {{0, -1}}});
  SearchState st(f);
  EXPECT_TRUE(unit_propagation(st).contradiction);
}

TEST(UnitPropagation, ChainAnyOrder) {
  const CnfFormula f = from(3, {{{0, 1}}, {{0, -1}, {1, 1}}, {{1, -1}, {2, 1}}});
  for (std::uint64_t s = 0; s < 10; ++s) {
    SearchState st(f);
    Rng rng(RngSeed{61, s});
    unit_propagation(st, &rng);
    EXPECT_EQ(st.partial(), (PartialAssignment{1, 1, 1}));
  }
}

TEST(UnitPropagation, MatchesNaiveFixpoint) {
  Rng rng(RngSeed{62, 0});
  for (int t = 0; t < 500; ++t) {
    const int n = 5 + static_cast<int>(rng.below(20));
    CnfFormula f = test::small_random_cnf(rng, n, 2, constraint_count(0.8, n));
    for (int u = 0; u < 3; ++u) f.clauses.push_back({{static_cast<int>(rng.below(n)), rng.spin()}});
    const auto naive = test::naive_unit_propagation(f);
    for (int order = 0; order < 3; ++order) {
      SearchState st(f);
      Rng r2(RngSeed{63, std::uint64_t(t * 3 + order)});
      const UpResult r = unit_propagation(st, order ? &r2 : nullptr);
      ASSERT_EQ(r.contradiction, !naive.has_value());
      if (naive)
        for (int v = 0; v < n; ++v) EXPECT_EQ(st.value(v), (*naive)[v]);
    }
  }
}

TEST(SearchState, UndoRestores) {
  const CnfFormula f = ksat(30, 3, 4.0, 64);
  SearchState st(f);
  Rng rng(RngSeed{64, 1});
  std::vector<std::size_t> before;
  for (int len = 0; len <= 3; ++len) before.push_back(st.count(len));
  for (int i = 0; i < 10; ++i) {
    const int v = static_cast<int>(st.unset_vars()[rng.below(st.unset_vars().size())]);
    st.assign(v, rng.spin());
  }
  st.undo(0);
  for (int len = 0; len <= 3; ++len) EXPECT_EQ(st.count(len), before[len]);
  EXPECT_EQ(st.unset_vars().size(), 30u);
}

TEST(SearchState, BucketsMatchResidual) {
  const CnfFormula f = ksat(40, 3, 3.0, 65);
  SearchState st(f);
  Rng rng(RngSeed{65, 1});
  for (int i = 0; i < 12; ++i) {
    const int v = static_cast<int>(st.unset_vars()[rng.below(st.unset_vars().size())]);
    st.assign(v, rng.spin());
  }
  const ResidualFormula r = simplify(f, st.partial());
  std::vector<std::size_t> by_len(4, 0);
  for (const auto& c : r.formula.clauses) ++by_len[c.size()];
  for (int len = 1; len <= 3; ++len) EXPECT_EQ(st.count(len), by_len[len]);
  EXPECT_EQ(st.residual().formula.clauses.size(), r.formula.clauses.size());
}

TEST(NoBacktrack, EmptyFormula) {
  const CnfFormula f = from(5, {});
  const NoBacktrackResult r = run_no_backtrack(f, SplitHeuristic::uc, {});
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.assignment.size(), 5u);
}

TEST(NoBacktrack, CertifiedSuccess) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CnfFormula f = ksat(2000, 3, 1.5, 66 + s);
    const NoBacktrackResult r = run_no_backtrack(f, SplitHeuristic::guc, RngSeed{66, s});
    if (r.success) {
      EXPECT_EQ(energy(f, r.assignment), 0u);
    }
  }
}

TEST(NoBacktrack, UcMatchesClosedFormAtAlphaTwo) {
  const int runs = 400;
  int ok = 0;
  for (int s = 0; s < runs; ++s)
    ok += run_no_backtrack(ksat(5000, 3, 2.0, 1000 + s), SplitHeuristic::uc, RngSeed{67, std::uint64_t(s)}).success;
  EXPECT_NEAR(double(ok) / runs, p_success_uc(2.0), 0.07);
}

TEST(NoBacktrack, UcFailsAboveThresholdNearContradictionLine) {
  const int runs = 100;
  int ok = 0;
  double closest = 1e9;
  for (int s = 0; s < runs; ++s) {
    const NoBacktrackResult r = run_no_backtrack(ksat(5000, 3, 3.5, 2000 + s), SplitHeuristic::uc, RngSeed{68, std::uint64_t(s)});
    ok += r.success;
    for (const auto& p : r.trajectory)
      if (p.p < 1.0 && p.c1 + p.c2 + p.c3 > 0) closest = std::min(closest, std::abs(p.alpha - contradiction_line(p.p)));
  }
  EXPECT_LT(double(ok) / runs, 0.02);
  EXPECT_LT(closest, 0.1);
}

TEST(NoBacktrack, TrajectoryStartsAtOrigin) {
  const CnfFormula f = ksat(1000, 3, 2.0, 69);
  const NoBacktrackResult r = run_no_backtrack(f, SplitHeuristic::uc, RngSeed{69, 0});
  ASSERT_FALSE(r.trajectory.empty());
  EXPECT_EQ(r.trajectory.front().t, 0.0);
  EXPECT_EQ(r.trajectory.front().p, 1.0);
  EXPECT_NEAR(r.trajectory.front().alpha, 2.0, 1e-12);
}

TEST(Dpll, OppositeUnits) {
  const DpllResult r = dpll_complete(from(1, {{{0, 1}}, {{0, -1}}}), SplitHeuristic::guc, {}, 100);
  EXPECT_EQ(r.stats.outcome, DpllOutcome::unsat);
  EXPECT_EQ(r.stats.splits, 0u);
}

TEST(Dpll, VerdictsMatchEnumeration) {
  Rng rng(RngSeed{70, 0});
  for (int t = 0; t < 1500; ++t) {
    const int n = 3 + static_cast<int>(rng.below(14));
    const int k = 2 + static_cast<int>(rng.below(2));
    const CnfFormula f = test::small_random_cnf(rng, n, k, constraint_count(k == 2 ? 2.0 * rng.uniform() : 7.0 * rng.uniform(), n));
    const bool truth = test::enumerate(f).count > 0;
    const DpllResult r = dpll_complete(f, t % 2 ? SplitHeuristic::uc : SplitHeuristic::guc, RngSeed{71, std::uint64_t(t)}, 1u << 30);
    ASSERT_EQ(r.stats.outcome == DpllOutcome::sat, truth);
    if (truth) EXPECT_EQ(energy(f, r.assignment), 0u);
    else EXPECT_EQ(r.stats.outcome, DpllOutcome::unsat);
  }
}

TEST(Dpll, BudgetCensors) {
  const DpllResult r = dpll_complete(ksat(150, 3, 4.3, 72), SplitHeuristic::uc, {}, 3);
  EXPECT_EQ(r.stats.outcome, DpllOutcome::budget);
}

TEST(Dpll, LinearTreeInEasyPhase) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const DpllResult r = dpll_complete(ksat(1000, 3, 2.0, 73 + s), SplitHeuristic::guc, RngSeed{73, s}, 100000000);
    EXPECT_EQ(r.stats.outcome, DpllOutcome::sat);
    EXPECT_LE(r.stats.splits, 1000u);
  }
}

TEST(Dpll, TauDecreasesWithAlpha) {
  const TauFit t6 = tree_size_exponent(3, 6.0, {50, 75, 100}, 40, SplitHeuristic::guc, RngSeed{74, 0});
  const TauFit t10 = tree_size_exponent(3, 10.0, {50, 75, 100}, 40, SplitHeuristic::guc, RngSeed{75, 0});
  EXPECT_GT(t6.tau, 0.0);
  EXPECT_GT(t10.tau, 0.0);
  EXPECT_LT(t10.tau, t6.tau);
  EXPECT_EQ(t6.budget_hits, 0u);
}

TEST(TwoSat, MatchesEnumeration) {
  Rng rng(RngSeed{76, 0});
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng.below(15));
    CnfFormula f = test::small_random_cnf(rng, n, 2, constraint_count(2.0 * rng.uniform(), n));
    if (t % 3 == 0) f.clauses.push_back({{static_cast<int>(rng.below(n)), rng.spin()}});
    const auto r = two_sat_solve(f);
    ASSERT_EQ(r.has_value(), test::enumerate(f).count > 0);
    if (r) EXPECT_EQ(energy(f, *r), 0u);
  }
  EXPECT_THROW(two_sat_solve(ksat(10, 3, 1.0, 77)), std::invalid_argument);
}

TEST(Heuristics, ParseRoundTrip) {
  for (auto h : {SplitHeuristic::uc, SplitHeuristic::guc}) EXPECT_EQ(parse_split_heuristic(to_string(h)), h);
  EXPECT_THROW(parse_split_heuristic("x"), std::invalid_argument);
}

TEST(Heuristics, GucSatisfiesShortestClause) {
  const CnfFormula f = from(4, {{{0, 1}, {1, -1}}, {{1, 1}, {2, 1}, {3, -1}}});
  SearchState st(f);
  Rng rng(RngSeed{78, 0});
  for (int i = 0; i < 20; ++i) {
    const Literal l = choose_split(st, SplitHeuristic::guc, rng);
    EXPECT_TRUE((l == Literal{0, 1}) || (l == Literal{1, -1}));
  }
}

}  // namespace
}  // namespace rcsp
