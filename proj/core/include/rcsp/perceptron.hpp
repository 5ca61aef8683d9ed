#pragma once

#include <utility>
#include <vector>

#include "rcsp/formula.hpp"

namespace rcsp {

/// System of inequalities σ·T^a > threshold with ternary rows T^a.
/// Rows are stored sparsely as (variable, coefficient) pairs.
struct PerceptronSystem {
  int n_vars = 0;
  int k = 0;
  int threshold = 0;  // -(k-1)
  std::vector<std::vector<std::pair<int, int>>> rows;

  int dot(std::size_t a, const Assignment& s) const;
  bool satisfied_by(const Assignment& s) const;
};

/// Row a has coefficient -J = sign on each variable of clause a.
/// Throws std::invalid_argument if clause lengths differ.
PerceptronSystem to_perceptron_system(const CnfFormula& f);

}  // namespace rcsp
