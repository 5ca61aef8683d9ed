#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "rcsp/formula.hpp"
#include "rcsp/rng.hpp"

namespace rcsp {

enum class EnsembleKind { ksat, xorsat, two_plus_p, planted_ksat };

std::string to_string(EnsembleKind kind);
/// Accepts "ksat", "xorsat", "two_plus_p" (or "2+p"), "planted_ksat" (or "planted").
EnsembleKind parse_ensemble_kind(const std::string& s);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ksat;
  int n = 0;
  int k = 3;
  double alpha = 0.0;
  double p = 1.0;  // two_plus_p only: fraction of 3-clauses
  RngSeed seed{};
};

struct GeneratedInstance {
  std::variant<CnfFormula, XorFormula> formula;
  std::optional<Assignment> planted;

  const CnfFormula& cnf() const { return std::get<CnfFormula>(formula); }
  const XorFormula& xorf() const { return std::get<XorFormula>(formula); }
  bool is_cnf() const { return std::holds_alternative<CnfFormula>(formula); }
};

/// Number of constraints, round(alpha * n).
std::size_t constraint_count(double alpha, int n);

/// Throws std::invalid_argument if n < k, k < 1, alpha < 0 or p outside [0,1].
GeneratedInstance gen_formula(const EnsembleSpec& spec);

/// Building blocks, drawing from a caller-owned generator.
/// `vars` is filled with k distinct uniform indices in [0, n).
void sample_distinct(Rng& rng, int n, int k, std::vector<int>& vars);
CnfFormula random_ksat(Rng& rng, int n, int k, std::size_t m);
XorFormula random_xorsat(Rng& rng, int n, int k, std::size_t m);
/// Mixed formula: m3 clauses of length 3 followed by m2 clauses of length 2.
CnfFormula random_two_plus_p(Rng& rng, int n, std::size_t m3, std::size_t m2);
/// Clauses uniform among those satisfied by `planted`.
CnfFormula random_planted_ksat(Rng& rng, int n, int k, std::size_t m, const Assignment& planted);

Assignment random_assignment(Rng& rng, int n);

}  // namespace rcsp
