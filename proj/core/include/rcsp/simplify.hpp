#pragma once

#include <cstddef>
#include <vector>

#include "rcsp/formula.hpp"

namespace rcsp {

/// Formula left after fixing some variables. Variable indices are kept;
/// assigned variables simply no longer occur. `origin[j]` is the index of
/// the original clause that residual clause j came from.
struct ResidualFormula {
  CnfFormula formula;
  std::vector<std::size_t> origin;
  bool contradiction = false;
  std::size_t empty_clause = 0;  // origin of the first emptied clause, if any
};

/// Removes satisfied clauses and false literals. Throws std::invalid_argument
/// if `partial` has the wrong length.
ResidualFormula simplify(const CnfFormula& f, const PartialAssignment& partial);

}  // namespace rcsp
