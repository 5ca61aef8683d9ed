#include "rcsp/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace rcsp {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::ksat: return "ksat";
    case EnsembleKind::xorsat: return "xorsat";
    case EnsembleKind::two_plus_p: return "two_plus_p";
    case EnsembleKind::planted_ksat: return "planted_ksat";
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(const std::string& s) {
  if (s == "ksat") return EnsembleKind::ksat;
  if (s == "xorsat") return EnsembleKind::xorsat;
  if (s == "two_plus_p" || s == "2+p") return EnsembleKind::two_plus_p;
  if (s == "planted_ksat" || s == "planted") return EnsembleKind::planted_ksat;
  throw std::invalid_argument("unknown ensemble kind: " + s);
}

std::size_t constraint_count(double alpha, int n) {
  return static_cast<std::size_t>(std::llround(alpha * n));
}

void sample_distinct(Rng& rng, int n, int k, std::vector<int>& vars) {
  vars.clear();
  while (static_cast<int>(vars.size()) < k) {
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    bool dup = false;
    for (int w : vars) dup |= (w == v);
    if (!dup) vars.push_back(v);
  }
}

CnfFormula random_ksat(Rng& rng, int n, int k, std::size_t m) {
  CnfFormula f{n, {}};
  f.clauses.reserve(m);
  std::vector<int> vars;
  for (std::size_t a = 0; a < m; ++a) {
    sample_distinct(rng, n, k, vars);
    Clause c;
    c.reserve(k);
    for (int v : vars) c.push_back({v, rng.spin()});
    f.clauses.push_back(std::move(c));
  }
  return f;
}

XorFormula random_xorsat(Rng& rng, int n, int k, std::size_t m) {
  XorFormula f{n, {}};
  f.equations.reserve(m);
  std::vector<int> vars;
  for (std::size_t a = 0; a < m; ++a) {
    sample_distinct(rng, n, k, vars);
    f.equations.push_back({vars, rng.spin()});
  }
  return f;
}

CnfFormula random_two_plus_p(Rng& rng, int n, std::size_t m3, std::size_t m2) {
  CnfFormula f = random_ksat(rng, n, 3, m3);
  CnfFormula g = random_ksat(rng, n, 2, m2);
  for (auto& c : g.clauses) f.clauses.push_back(std::move(c));
  return f;
}

CnfFormula random_planted_ksat(Rng& rng, int n, int k, std::size_t m, const Assignment& planted) {
  CnfFormula f{n, {}};
  f.clauses.reserve(m);
  std::vector<int> vars;
  for (std::size_t a = 0; a < m; ++a) {
    sample_distinct(rng, n, k, vars);
    Clause c(k);
    do {
      for (int j = 0; j < k; ++j) c[j] = {vars[j], rng.spin()};
    } while (!clause_satisfied(c, planted));
    f.clauses.push_back(std::move(c));
  }
  return f;
}

Assignment random_assignment(Rng& rng, int n) {
  Assignment a(n);
  for (auto& s : a) s = static_cast<std::int8_t>(rng.spin());
  return a;
}

GeneratedInstance gen_formula(const EnsembleSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("k must be positive");
  if (spec.n < spec.k) throw std::invalid_argument("n must be at least k");
  if (!(spec.alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  Rng rng(spec.seed);
  const std::size_t m = constraint_count(spec.alpha, spec.n);
  switch (spec.kind) {
    case EnsembleKind::ksat:
      return {random_ksat(rng, spec.n, spec.k, m), std::nullopt};
    case EnsembleKind::xorsat:
      return {random_xorsat(rng, spec.n, spec.k, m), std::nullopt};
    case EnsembleKind::two_plus_p: {
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
      if (spec.n < 3) throw std::invalid_argument("two_plus_p needs n >= 3");
      const auto m3 = static_cast<std::size_t>(std::llround(spec.alpha * spec.n * spec.p));
      const auto m2 = static_cast<std::size_t>(std::llround(spec.alpha * spec.n * (1.0 - spec.p)));
      return {random_two_plus_p(rng, spec.n, m3, m2), std::nullopt};
    }
    case EnsembleKind::planted_ksat: {
      Assignment planted = random_assignment(rng, spec.n);
      CnfFormula f = random_planted_ksat(rng, spec.n, spec.k, m, planted);
      return {std::move(f), std::move(planted)};
    }
  }
  throw std::invalid_argument("unknown ensemble kind");
}

}  // namespace rcsp
