#include "rcsp/formula.hpp"

#include <stdexcept>
#include <string>

namespace rcsp {

int CnfFormula::uniform_length() const {
  if (clauses.empty()) return 0;
  const auto len = clauses.front().size();
  for (const auto& c : clauses)
    if (c.size() != len) return -1;
  return static_cast<int>(len);
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (const auto& l : c)
    if (a[l.var] == l.sign) return true;
  return false;
}

bool equation_satisfied(const XorEquation& e, const Assignment& a) {
  int prod = 1;
  for (int v : e.vars) prod *= a[v];
  return prod == e.parity;
}

namespace {

void check_length(int n, const Assignment& a) {
  if (static_cast<int>(a.size()) != n)
    throw std::invalid_argument("assignment length " + std::to_string(a.size()) +
                                " does not match n_vars " + std::to_string(n));
}

}  // namespace

std::size_t energy(const CnfFormula& f, const Assignment& a) {
  check_length(f.n_vars, a);
  std::size_t e = 0;
  for (const auto& c : f.clauses) e += clause_satisfied(c, a) ? 0 : 1;
  return e;
}

std::size_t energy(const XorFormula& f, const Assignment& a) {
  check_length(f.n_vars, a);
  std::size_t e = 0;
  for (const auto& eq : f.equations) e += equation_satisfied(eq, a) ? 0 : 1;
  return e;
}

void validate(const CnfFormula& f) {
  if (f.n_vars < 0) throw std::invalid_argument("negative n_vars");
  std::vector<std::size_t> seen(f.n_vars, ~std::size_t{0});
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    for (const auto& l : f.clauses[ci]) {
      if (l.var < 0 || l.var >= f.n_vars)
        throw std::invalid_argument("clause " + std::to_string(ci) + ": variable out of range");
      if (l.sign != 1 && l.sign != -1)
        throw std::invalid_argument("clause " + std::to_string(ci) + ": sign must be +1 or -1");
      if (seen[l.var] == ci)
        throw std::invalid_argument("clause " + std::to_string(ci) + ": repeated variable");
      seen[l.var] = ci;
    }
  }
}

void validate(const XorFormula& f) {
  if (f.n_vars < 0) throw std::invalid_argument("negative n_vars");
  std::vector<std::size_t> seen(f.n_vars, ~std::size_t{0});
  for (std::size_t ei = 0; ei < f.equations.size(); ++ei) {
    const auto& e = f.equations[ei];
    if (e.parity != 1 && e.parity != -1)
      throw std::invalid_argument("equation " + std::to_string(ei) + ": parity must be +1 or -1");
    for (int v : e.vars) {
      if (v < 0 || v >= f.n_vars)
        throw std::invalid_argument("equation " + std::to_string(ei) + ": variable out of range");
      if (seen[v] == ei)
        throw std::invalid_argument("equation " + std::to_string(ei) + ": repeated variable");
      seen[v] = ei;
    }
  }
}

Assignment assignment_from_bits(std::uint64_t bits, int n) {
  Assignment a(n);
  for (int i = 0; i < n; ++i) a[i] = ((bits >> i) & 1U) ? 1 : -1;
  return a;
}

}  // namespace rcsp
