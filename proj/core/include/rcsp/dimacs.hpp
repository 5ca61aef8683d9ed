#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rcsp/formula.hpp"

namespace rcsp {

/// Contents of a DIMACS file. Ordinary clause lines go to `cnf`, lines
/// starting with `x` go to `xorf`; both share the header variable count.
struct DimacsContents {
  CnfFormula cnf;
  XorFormula xorf;
  std::optional<Assignment> planted;
};

/// Throws std::runtime_error with the offending line number on malformed input.
DimacsContents read_dimacs(std::istream& in);
DimacsContents read_dimacs_file(const std::string& path);

void write_dimacs(std::ostream& out, const CnfFormula& f,
                  const std::optional<Assignment>& planted = std::nullopt);
/// XOR equations as `x` lines; a leading minus sign on the first literal
/// encodes parity -1.
void write_dimacs(std::ostream& out, const XorFormula& f,
                  const std::optional<Assignment>& planted = std::nullopt);

}  // namespace rcsp
