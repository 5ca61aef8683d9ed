#include "rcsp/simplify.hpp"

#include <stdexcept>

namespace rcsp {

ResidualFormula simplify(const CnfFormula& f, const PartialAssignment& partial) {
  if (static_cast<int>(partial.size()) != f.n_vars)
    throw std::invalid_argument("partial assignment length does not match n_vars");
  ResidualFormula r;
  r.formula.n_vars = f.n_vars;
  for (std::size_t a = 0; a < f.clauses.size(); ++a) {
    Clause reduced;
    bool sat = false;
    for (const auto& l : f.clauses[a]) {
      const int v = partial[l.var];
      if (v == 0) {
        reduced.push_back(l);
      } else if (v == l.sign) {
        sat = true;
        break;
      }
    }
    if (sat) continue;
    if (reduced.empty()) {
      if (!r.contradiction) r.empty_clause = a;
      r.contradiction = true;
      continue;
    }
    r.formula.clauses.push_back(std::move(reduced));
    r.origin.push_back(a);
  }
  return r;
}

}  // namespace rcsp
