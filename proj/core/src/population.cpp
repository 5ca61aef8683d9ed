#include "rcsp/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcsp {

namespace {

constexpr double kProductCap = 1.0 - 1e-15;
constexpr double kTanhCap = 1.0 - 1e-15;

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

class RsSampler {
 public:
  RsSampler(int k, double alpha, PopulationModel model, double cap, Rng& rng, const std::vector<double>& pop)
      : k_(k), mean_(alpha * k / 2.0), model_(model), cap_(cap), rng_(rng), pop_(pop) {}

  double draw_field() { return pop_[rng_.below(pop_.size())]; }

  // Clause message towards a variable from k−1 population fields. For
  // XORSAT the sign of the coupling is drawn.
  double message() {
    if (model_ == PopulationModel::ksat) {
      double l = 0.0;
      for (int j = 0; j < k_ - 1; ++j) l -= softplus(2.0 * draw_field());
      return -0.5 * std::log1p(-std::min(std::exp(l), kProductCap));
    }
    double t = 1.0;
    for (int j = 0; j < k_ - 1; ++j) t *= std::tanh(draw_field());
    t = std::clamp(t, -kTanhCap, kTanhCap);
    return rng_.spin() * std::atanh(t);
  }

  double field() {
    const std::uint64_t p = rng_.poisson(mean_), q = rng_.poisson(mean_);
    double h = 0.0;
    for (std::uint64_t b = 0; b < p; ++b) h += message();
    for (std::uint64_t b = 0; b < q; ++b) h -= message();
    return std::clamp(h, -cap_, cap_);
  }

  double log_z_clause() {
    if (model_ == PopulationModel::ksat) {
      double l = 0.0;
      for (int j = 0; j < k_; ++j) l -= softplus(2.0 * draw_field());
      return std::log1p(-std::min(std::exp(l), kProductCap));
    }
    double t = 1.0;
    for (int j = 0; j < k_; ++j) t *= std::tanh(draw_field());
    return std::log(0.5 * std::max(1.0 + rng_.spin() * t, 1e-300));
  }

  double log_z_var() {
    const std::uint64_t p = rng_.poisson(mean_), q = rng_.poisson(mean_);
    double lp = 0.0, lm = 0.0;
    for (std::uint64_t b = 0; b < p + q; ++b) {
      const double su = (b < p ? 1.0 : -1.0) * message();
      lp -= softplus(-2.0 * su);
      lm -= softplus(2.0 * su);
    }
    return log_sum_exp(lp, lm);
  }

  double log_z_edge() {
    const double x = std::tanh(draw_field()) * std::tanh(message());
    return std::log(0.5 * std::max(1.0 + x, 1e-300));
  }

 private:
  int k_;
  double mean_;
  PopulationModel model_;
  double cap_;
  Rng& rng_;
  const std::vector<double>& pop_;
};

}  // namespace

double rs_clause_message(const std::vector<double>& fields) {
  double l = 0.0;
  for (double h : fields) l -= softplus(2.0 * h);
  return -0.5 * std::log1p(-std::min(std::exp(l), kProductCap));
}

double rs_field_update(const std::vector<double>& same_u, const std::vector<double>& opposite_u) {
  double h = 0.0;
  for (double u : same_u) h += u;
  for (double u : opposite_u) h -= u;
  return h;
}

RsPopulationResult rs_population(int k, double alpha, const RsPopulationParams& params, RngSeed seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
  if (params.size < 2) throw std::invalid_argument("population size must be at least 2");
  if (params.measure < 1 || params.burn_in < 0) throw std::invalid_argument("bad sweep counts");
  Rng rng(seed);
  RsPopulationResult r;
  auto& pop = r.population.values;
  pop.resize(params.size);
  for (auto& h : pop) h = 2.0 * rng.uniform() - 1.0;
  RsSampler s(k, alpha, params.model, params.field_cap, rng, pop);
  const std::size_t samples = params.samples_per_sweep ? params.samples_per_sweep : params.size;
  auto sweep = [&] {
    for (std::size_t t = 0; t < params.size; ++t) {
      const double h = s.field();
      pop[rng.below(pop.size())] = h;
    }
    ++r.population.generation;
  };
  for (int t = 0; t < params.burn_in; ++t) sweep();
  std::vector<double> est;
  double clamped = 0.0;
  for (int t = 0; t < params.measure; ++t) {
    sweep();
    double za = 0.0, zi = 0.0, ze = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
      za += s.log_z_clause();
      zi += s.log_z_var();
      ze += s.log_z_edge();
    }
    const double ns = static_cast<double>(samples);
    est.push_back(zi / ns + alpha * za / ns - alpha * k * ze / ns);
    std::size_t c = 0;
    for (double h : pop) c += std::fabs(h) >= params.field_cap;
    clamped += double(c) / double(pop.size());
  }
  double mean = 0.0;
  for (double e : est) mean += e;
  mean /= double(est.size());
  double var = 0.0;
  for (double e : est) var += (e - mean) * (e - mean);
  r.entropy = mean;
  r.stderr_ = est.size() > 1 ? std::sqrt(var / double(est.size() - 1) / double(est.size())) : 0.0;
  r.clamped_fraction = clamped / params.measure;
  r.diverged = r.clamped_fraction > 0.01;
  return r;
}

namespace {

double survey_update(int k, double mean, const std::vector<double>& pop, Rng& rng) {
  double delta = 1.0;
  for (int j = 0; j < k - 1; ++j) {
    const std::uint64_t p = rng.poisson(mean), q = rng.poisson(mean);
    double same = 1.0, opp = 1.0;
    for (std::uint64_t b = 0; b < p; ++b) same *= 1.0 - pop[rng.below(pop.size())];
    for (std::uint64_t b = 0; b < q; ++b) opp *= 1.0 - pop[rng.below(pop.size())];
    const double den = same + opp - same * opp;
    delta *= den > 0.0 ? (1.0 - opp) * same / den : 0.0;
  }
  return delta;
}

}  // namespace

SpPopulationPoint sp_population_point(int k, double alpha, const SpPopulationParams& params, RngSeed seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (params.size < 2 || params.sweeps < 1 || params.seeds < 1) throw std::invalid_argument("bad population parameters");
  SpPopulationPoint pt;
  pt.alpha = alpha;
  pt.seeds = params.seeds;
  const Rng root(seed);
  const double mean = alpha * k / 2.0;
  for (int s = 0; s < params.seeds; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    std::vector<double> pop(params.size);
    for (auto& d : pop) d = rng.open_uniform();
    for (int t = 0; t < params.sweeps; ++t)
      for (std::size_t j = 0; j < params.size; ++j) pop[rng.below(pop.size())] = survey_update(k, mean, pop, rng);
    std::size_t small = 0;
    for (double d : pop) small += d <= 1e-6;
    const double mass = double(small) / double(pop.size());
    pt.trivial_mass.push_back(mass);
    if (mass < 0.999) ++pt.nontrivial_votes;
  }
  return pt;
}

SpOnsetEstimate sp_population_onset(int k, const std::vector<double>& alphas, const SpPopulationParams& params,
                                    RngSeed seed) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha grid");
  if (!std::is_sorted(alphas.begin(), alphas.end())) throw std::invalid_argument("alpha grid must be sorted");
  SpOnsetEstimate est;
  for (std::size_t j = 0; j < alphas.size(); ++j)
    est.points.push_back(sp_population_point(k, alphas[j], params, RngSeed{hash_words({seed.base, seed.stream, j}), 0}));
  // Bracket: last unanimously trivial point below the first majority
  // nontrivial point, and the first unanimously nontrivial point from there.
  const auto& pts = est.points;
  std::size_t first = pts.size();
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (pts[j].nontrivial()) {
      first = j;
      break;
    }
  if (first == pts.size() || first == 0) {
    est.found = false;
    est.bracket_lo = est.bracket_hi = first == 0 ? alphas.front() : alphas.back();
    est.alpha_d = est.bracket_lo;
    return est;
  }
  std::size_t lo = first - 1;
  while (lo > 0 && !pts[lo].unanimous()) --lo;
  std::size_t hi = first;
  while (hi + 1 < pts.size() && !pts[hi].unanimous()) ++hi;
  est.widened = lo != first - 1 || hi != first;
  est.found = true;
  est.bracket_lo = alphas[lo];
  est.bracket_hi = alphas[hi];
  est.alpha_d = 0.5 * (est.bracket_lo + est.bracket_hi);
  return est;
}

}  // namespace rcsp
