#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rcsp/dimacs.hpp"
#include "rcsp/generators.hpp"

namespace rcsp::cli {

using json = nlohmann::ordered_json;

/// Instance either read from a DIMACS file or generated from ensemble flags.
struct InstanceOptions {
  std::string input;
  std::string kind = "ksat";
  int n = 1000;
  int k = 3;
  double alpha = 3.0;
  double p = 1.0;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--input", input, "DIMACS file (overrides the generator)");
    app->add_option("--kind", kind, "ensemble: ksat, xorsat, two_plus_p, planted_ksat");
    app->add_option("--n", n, "variables");
    app->add_option("--k", k, "clause length");
    app->add_option("--alpha", alpha, "constraints per variable");
    app->add_option("--p", p, "fraction of 3-clauses (two_plus_p)");
    app->add_option("--seed", seed, "seed");
  }

  EnsembleSpec spec() const { return {parse_ensemble_kind(kind), n, k, alpha, p, RngSeed{seed, 0}}; }

  GeneratedInstance load() const {
    if (input.empty()) return gen_formula(spec());
    DimacsContents d = read_dimacs_file(input);
    GeneratedInstance g;
    if (!d.xorf.equations.empty()) g.formula = std::move(d.xorf);
    else g.formula = std::move(d.cnf);
    g.planted = std::move(d.planted);
    return g;
  }

  json describe() const {
    if (!input.empty()) return {{"input", input}};
    return {{"kind", kind}, {"n", n}, {"k", k}, {"alpha", alpha}, {"p", p}, {"seed", seed}};
  }
};

inline void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void register_gen(CLI::App& app);
void register_analytic(CLI::App& app);
void register_walk(CLI::App& app);
void register_dpll(CLI::App& app);
void register_xorsat(CLI::App& app);
void register_mp(CLI::App& app);
void register_population(CLI::App& app);
void register_experiment(CLI::App& app);

}  // namespace rcsp::cli
