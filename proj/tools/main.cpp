#include <exception>
#include <iostream>

#include "common.hpp"
#include "rcsp/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Random constraint satisfaction toolkit"};
  app.set_version_flag("--version", rcsp::version());
  app.require_subcommand(1);
  rcsp::cli::register_gen(app);
  rcsp::cli::register_analytic(app);
  rcsp::cli::register_walk(app);
  rcsp::cli::register_dpll(app);
  rcsp::cli::register_xorsat(app);
  rcsp::cli::register_mp(app);
  rcsp::cli::register_population(app);
  rcsp::cli::register_experiment(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
