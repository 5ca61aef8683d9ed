#include <cmath>
#include <memory>

#include "common.hpp"
#include "rcsp/analytic.hpp"

namespace rcsp::cli {

void register_gen(CLI::App& app) {
  auto opt = std::make_shared<InstanceOptions>();
  auto out = std::make_shared<std::string>();
  CLI::App* cmd = app.add_subcommand("gen", "Generate a random instance as DIMACS");
  opt->add(cmd);
  cmd->add_option("--output,-o", *out, "output file (default stdout)");
  cmd->callback([opt, out] {
    const GeneratedInstance g = opt->load();
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out->empty()) {
      file = open_out(*out);
      os = &file;
    }
    if (g.is_cnf()) write_dimacs(*os, g.cnf(), g.planted);
    else write_dimacs(*os, g.xorf(), g.planted);
  });
}

namespace {

struct AnalyticState {
  long N = 2, M = 3;
  double lambda = 0.0, alpha = 0.5, p = 0.5;
  int k = 3, order = 64;
  std::string units = "nats";
  double tol = 1e-10;

  double scale() const {
    if (units == "ln2") return 1.0 / std::log(2.0);
    if (units == "nats") return 1.0;
    throw std::invalid_argument("units must be nats or ln2");
  }
};

json envelope(json inputs, json outputs, json tolerances) {
  return {{"inputs", std::move(inputs)}, {"outputs", std::move(outputs)}, {"tolerances", std::move(tolerances)}};
}

}  // namespace

void register_analytic(CLI::App& app) {
  auto st = std::make_shared<AnalyticState>();
  CLI::App* cmd = app.add_subcommand("analytic", "Closed-form and numeric formulas");
  cmd->require_subcommand(1);

  CLI::App* cover = cmd->add_subcommand("cover", "P(M points on the N-sphere are separable)");
  cover->add_option("--N", st->N)->required();
  cover->add_option("--M", st->M)->required();
  cover->callback([st] {
    emit(envelope({{"N", st->N}, {"M", st->M}}, {{"probability", cover_probability(st->N, st->M)}},
                  {{"exact_below", 10000}}));
  });

  CLI::App* window = cmd->add_subcommand("window", "Large-N cover probability in the critical window");
  window->add_option("--lambda", st->lambda)->required();
  window->callback([st] { emit(envelope({{"lambda", st->lambda}}, {{"probability", cover_window(st->lambda)}}, json::object())); });

  auto units = [st](CLI::App* c) { c->add_option("--units", st->units, "nats or ln2"); };

  CLI::App* annealed = cmd->add_subcommand("annealed", "Annealed entropy G1 of the perceptron");
  annealed->add_option("--alpha", st->alpha)->required();
  units(annealed);
  annealed->callback([st] {
    emit(envelope({{"alpha", st->alpha}, {"units", st->units}}, {{"G1", annealed_exponent(st->alpha) * st->scale()}},
                  json::object()));
  });

  CLI::App* second = cmd->add_subcommand("second-moment", "Maximum of the second-moment exponent");
  second->add_option("--alpha", st->alpha)->required();
  units(second);
  second->callback([st] {
    const SecondMomentResult r = second_moment_exponent(st->alpha);
    const double g1 = annealed_exponent(st->alpha);
    emit(envelope({{"alpha", st->alpha}, {"units", st->units}},
                  {{"q_star", r.q},
                   {"G2_max", r.g2 * st->scale()},
                   {"G1", g1 * st->scale()},
                   {"G2_minus_2G1", (r.g2 - 2 * g1) * st->scale()}},
                  {{"grid_step", 1e-4}}));
  });

  CLI::App* rs = cmd->add_subcommand("rs", "Replica-symmetric perceptron entropy");
  rs->add_option("--alpha", st->alpha)->required();
  rs->add_option("--order", st->order, "Gauss-Hermite nodes");
  rs->add_option("--tol", st->tol, "stationarity tolerance");
  units(rs);
  rs->callback([st] {
    SaddleOptions o;
    o.quadrature_order = st->order;
    o.tolerance = st->tol;
    const SaddleResult r = rs_entropy_perceptron(st->alpha, o);
    emit(envelope({{"alpha", st->alpha}, {"units", st->units}, {"order", st->order}},
                  {{"q", r.q},
                   {"q_hat", r.q_hat},
                   {"entropy", r.value * st->scale()},
                   {"iterations", r.iterations},
                   {"residual_q", r.residual_q},
                   {"residual_q_hat", r.residual_q_hat},
                   {"fixed_points", r.fixed_points},
                   {"disagreement", r.disagreement},
                   {"edge_runs", r.edge_runs}},
                  {{"tolerance", st->tol}}));
  });

  CLI::App* thr = cmd->add_subcommand("threshold", "Root of the replica-symmetric entropy");
  thr->add_option("--order", st->order, "Gauss-Hermite nodes");
  thr->callback([st] {
    SaddleOptions o;
    o.quadrature_order = st->order;
    emit(envelope({{"order", st->order}}, {{"alpha_s", perceptron_threshold(o)}}, {{"bisection", 1e-6}}));
  });

  CLI::App* uc = cmd->add_subcommand("uc", "Success probability of unit-clause search on 3-SAT");
  uc->add_option("--alpha", st->alpha)->required();
  uc->callback([st] { emit(envelope({{"alpha", st->alpha}}, {{"p_success", p_success_uc(st->alpha)}}, json::object())); });

  CLI::App* ad = cmd->add_subcommand("xorsat-ad", "Clustering threshold of k-XORSAT");
  ad->add_option("--k", st->k)->required();
  ad->callback([st] {
    emit(envelope({{"k", st->k}}, {{"alpha_d", xorsat_clustering_threshold(st->k)}}, {{"tolerance", 1e-9}}));
  });

  CLI::App* line = cmd->add_subcommand("contradiction", "Contradiction line of 2+p-SAT");
  line->add_option("--p", st->p)->required();
  line->callback([st] { emit(envelope({{"p", st->p}}, {{"alpha", contradiction_line(st->p)}}, json::object())); });
}

}  // namespace rcsp::cli
