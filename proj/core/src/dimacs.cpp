#include "rcsp/dimacs.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rcsp {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("dimacs line " + std::to_string(line) + ": " + what);
}

void write_planted(std::ostream& out, const std::optional<Assignment>& planted) {
  if (!planted) return;
  out << "c planted";
  for (auto s : *planted) out << (s > 0 ? " 1" : " -1");
  out << '\n';
}

}  // namespace

DimacsContents read_dimacs(std::istream& in) {
  DimacsContents out;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  Clause pending;  // clauses may span lines
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") {
      std::string word;
      if (ss >> word && word == "planted") {
        Assignment a;
        int v;
        while (ss >> v) {
          if (v != 1 && v != -1) fail(lineno, "planted values must be 1 or -1");
          a.push_back(static_cast<std::int8_t>(v));
        }
        out.planted = std::move(a);
      }
      continue;
    }
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long n = -1, m = -1;
      if (!(ss >> fmt >> n >> m) || (fmt != "cnf" && fmt != "xor") || n < 0 || m < 0)
        fail(lineno, "bad header");
      out.cnf.n_vars = out.xorf.n_vars = static_cast<int>(n);
      have_header = true;
      continue;
    }
    if (!have_header) fail(lineno, "data before header");
    if (tok == "x") {
      XorEquation e;
      long v;
      bool first = true;
      bool closed = false;
      while (ss >> v) {
        if (v == 0) {
          closed = true;
          break;
        }
        if (first && v < 0) e.parity = -1;
        first = false;
        const long var = std::labs(v) - 1;
        if (var >= out.xorf.n_vars) fail(lineno, "variable out of range");
        e.vars.push_back(static_cast<int>(var));
      }
      if (!closed) fail(lineno, "xor line not terminated by 0");
      out.xorf.equations.push_back(std::move(e));
      continue;
    }
    // Clause literals; the first token was already consumed.
    std::istringstream all(line);
    long v;
    while (all >> v) {
      if (v == 0) {
        out.cnf.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      const long var = std::labs(v) - 1;
      if (var >= out.cnf.n_vars) fail(lineno, "variable out of range");
      pending.push_back({static_cast<int>(var), v > 0 ? 1 : -1});
    }
    if (!all.eof()) fail(lineno, "unexpected token");
  }
  if (!pending.empty()) fail(lineno, "last clause not terminated by 0");
  if (!have_header) fail(lineno, "missing header");
  if (out.planted && static_cast<int>(out.planted->size()) != out.cnf.n_vars)
    fail(lineno, "planted assignment length mismatch");
  return out;
}

DimacsContents read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& f, const std::optional<Assignment>& planted) {
  out << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  write_planted(out, planted);
  for (const auto& c : f.clauses) {
    for (const auto& l : c) out << (l.sign > 0 ? l.var + 1 : -(l.var + 1)) << ' ';
    out << "0\n";
  }
}

void write_dimacs(std::ostream& out, const XorFormula& f, const std::optional<Assignment>& planted) {
  out << "p cnf " << f.n_vars << ' ' << f.equations.size() << '\n';
  write_planted(out, planted);
  for (const auto& e : f.equations) {
    out << 'x';
    for (std::size_t j = 0; j < e.vars.size(); ++j) {
      const int v = e.vars[j] + 1;
      out << ' ' << ((j == 0 && e.parity < 0) ? -v : v);
    }
    out << " 0\n";
  }
}

}  // namespace rcsp
