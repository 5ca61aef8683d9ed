#include "rcsp/perceptron.hpp"

#include <stdexcept>

namespace rcsp {

int PerceptronSystem::dot(std::size_t a, const Assignment& s) const {
  int d = 0;
  for (auto [v, t] : rows[a]) d += t * s[v];
  return d;
}

bool PerceptronSystem::satisfied_by(const Assignment& s) const {
  for (std::size_t a = 0; a < rows.size(); ++a)
    if (dot(a, s) <= threshold) return false;
  return true;
}

PerceptronSystem to_perceptron_system(const CnfFormula& f) {
  const int k = f.uniform_length();
  if (k < 0) throw std::invalid_argument("perceptron mapping needs a k-uniform formula");
  PerceptronSystem p;
  p.n_vars = f.n_vars;
  p.k = k;
  p.threshold = -(k - 1);
  p.rows.reserve(f.clauses.size());
  for (const auto& c : f.clauses) {
    std::vector<std::pair<int, int>> row;
    row.reserve(c.size());
    for (const auto& l : c) row.emplace_back(l.var, -l.coupling());
    p.rows.push_back(std::move(row));
  }
  return p;
}

}  // namespace rcsp
