#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rcsp {

/// A literal over variable `var`. sign = +1 means the literal is true when
/// the variable is true. In spin language the clause is violated by
/// σ_var = J = -sign.
struct Literal {
  int var = 0;
  int sign = 1;

  int coupling() const { return -sign; }
  bool satisfied_by(int spin) const { return spin == sign; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Spin per variable, +1 (true) or -1 (false).
using Assignment = std::vector<std::int8_t>;
/// Spin per variable, +1, -1 or 0 (unset).
using PartialAssignment = std::vector<std::int8_t>;

struct CnfFormula {
  int n_vars = 0;
  std::vector<Clause> clauses;

  std::size_t num_clauses() const { return clauses.size(); }
  double alpha() const { return n_vars > 0 ? double(clauses.size()) / n_vars : 0.0; }
  /// Common clause length, or -1 if lengths differ (0 for no clauses).
  int uniform_length() const;
};

/// Equation σ_{v1} σ_{v2} ... σ_{vk} = parity, parity in {+1,-1}.
struct XorEquation {
  std::vector<int> vars;
  int parity = 1;

  friend bool operator==(const XorEquation&, const XorEquation&) = default;
};

struct XorFormula {
  int n_vars = 0;
  std::vector<XorEquation> equations;

  std::size_t num_equations() const { return equations.size(); }
};

bool clause_satisfied(const Clause& c, const Assignment& a);
bool equation_satisfied(const XorEquation& e, const Assignment& a);

/// Number of violated constraints. Throws std::invalid_argument if the
/// assignment length differs from n_vars.
std::size_t energy(const CnfFormula& f, const Assignment& a);
std::size_t energy(const XorFormula& f, const Assignment& a);

/// Throws std::invalid_argument on out-of-range variables, repeated
/// variables inside a constraint, or bad signs/parities.
void validate(const CnfFormula& f);
void validate(const XorFormula& f);

/// Integer bits <-> spins: bit 1 encodes spin -1.
inline int spin_to_bit(int s) { return s < 0 ? 1 : 0; }
inline int bit_to_spin(int b) { return b ? -1 : 1; }

/// Assignment read from the low n bits of `bits` (bit i set -> variable i true).
Assignment assignment_from_bits(std::uint64_t bits, int n);

}  // namespace rcsp
