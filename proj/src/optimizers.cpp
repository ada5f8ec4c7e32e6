#include "cqdds/optimizers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cqdds {

namespace {

struct AlgorithmName {
  Algorithm algorithm;
  std::string_view id;
};

constexpr std::array<AlgorithmName, 10> kNames = {{
    {Algorithm::cqdds, "cqdds"},
    {Algorithm::qdds_uniform, "qdds-uniform"},
    {Algorithm::qpso, "qpso"},
    {Algorithm::pso_damped, "pso-damped"},
    {Algorithm::pso_canonical, "pso-canonical"},
    {Algorithm::sca, "sca"},
    {Algorithm::dfa, "dfa"},
    {Algorithm::alo, "alo"},
    {Algorithm::woa, "woa"},
    {Algorithm::fa, "fa"},
}};

void check_budget(const RunConfig& c, std::size_t min_budget) {
  if (c.budget < min_budget)
    throw std::invalid_argument("run budget must be >= " + std::to_string(min_budget));
  if (c.pool_size < 1) throw std::invalid_argument("pool size must be >= 1");
}

// Agents touched in one iteration.
std::vector<std::size_t> pick_agents(Rng& rng, std::size_t pool, SwarmMode mode) {
  if (mode == SwarmMode::one_agent) return {rng.index(pool)};
  std::vector<std::size_t> all(pool);
  for (std::size_t i = 0; i < pool; ++i) all[i] = i;
  return all;
}

}  // namespace

std::string_view algorithm_id(Algorithm a) {
  for (const auto& n : kNames)
    if (n.algorithm == a) return n.id;
  throw std::invalid_argument("unknown algorithm enum value");
}

Algorithm parse_algorithm(std::string_view id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.algorithm;
  throw std::invalid_argument("unknown algorithm id: " + std::string(id));
}

bool is_external(Algorithm a) {
  switch (a) {
    case Algorithm::sca:
    case Algorithm::dfa:
    case Algorithm::alo:
    case Algorithm::woa:
    case Algorithm::fa:
      return true;
    default:
      return false;
  }
}

const std::vector<Algorithm>& native_algorithms() {
  static const std::vector<Algorithm> algos = {Algorithm::cqdds, Algorithm::qdds_uniform,
                                               Algorithm::qpso, Algorithm::pso_damped,
                                               Algorithm::pso_canonical};
  return algos;
}

std::string_view swarm_mode_id(SwarmMode m) {
  return m == SwarmMode::one_agent ? "one-agent" : "full-swarm";
}

SwarmMode parse_swarm_mode(std::string_view id) {
  if (id == "one-agent") return SwarmMode::one_agent;
  if (id == "full-swarm") return SwarmMode::full_swarm;
  throw std::invalid_argument("unknown swarm mode: " + std::string(id));
}

void PsoParams::validate() const {
  if (!(w0 > 0.0)) throw std::invalid_argument("pso: w0 must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("pso: damping in (0, 1]");
  if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("pso: c1, c2 must be >= 0");
}

double QpsoParams::beta(std::size_t t, std::size_t t_max) const {
  if (t_max < 2) return beta_hi;
  const double frac = static_cast<double>(std::min(t, t_max) - 1) / static_cast<double>(t_max - 1);
  return beta_hi - (beta_hi - beta_lo) * frac;
}

// --- RunCore -------------------------------------------------------------------

RunCore::RunCore(const ObjectiveSpec& spec, std::size_t dim, std::size_t budget,
                 std::uint64_t seed)
    : spec_(&spec),
      box_(spec.box(spec.resolve_dim(dim))),
      budget_(budget),
      rng_(seed),
      best_cost_(std::numeric_limits<double>::infinity()),
      audited_best_(std::numeric_limits<double>::infinity()) {}

double RunCore::evaluate(std::span<const double> x) {
  if (!box_.contains(x)) ++out_of_box_;
  ++evaluations_;
  return cqdds::evaluate(*spec_, x, &rng_);
}

bool RunCore::offer(double cost, std::span<const double> x) {
  if (!(cost < best_cost_)) return false;
  best_cost_ = cost;
  best_position_.assign(x.begin(), x.end());
  trajectory_.push_back({t_, cost, x[0], x.size() > 1 ? x[1] : 0.0});
  return true;
}

void RunCore::advance() {
  if (best_cost_ > audited_best_) ++violations_;
  audited_best_ = best_cost_;
  ++t_;
}

void RunCore::finish_init() {
  initial_best_ = best_cost_;
  audited_best_ = best_cost_;
  init_evaluations_ = evaluations_;
  // Only the final initialization gbest is kept as P0.
  if (!trajectory_.empty()) {
    TrajectoryPoint p0 = trajectory_.back();
    trajectory_.assign(1, p0);
  }
}

RunResult RunCore::result() const {
  RunResult r;
  r.best_cost = best_cost_;
  r.best_position = best_position_;
  r.initial_best_cost = initial_best_;
  r.trajectory = trajectory_;
  r.evaluations = evaluations_;
  r.init_evaluations = init_evaluations_;
  r.iterations = std::min(t_ - 1, budget_);
  r.monotonicity_violations = violations_;
  r.out_of_box_evaluations = out_of_box_;
  return r;
}

// --- QDDS family -----------------------------------------------------------------

double blend(double r_t, double r_gbest, double rho) { return rho * r_t + (1.0 - rho) * r_gbest; }

QddsState init_qdds(const ObjectiveSpec& spec, const RunConfig& config) {
  check_budget(config, 3);
  config.delta.validate();
  QddsState s{RunCore(spec, config.dim, config.budget, config.seed), config.delta, {}, {},
              ChebyshevMap(), config.mode};
  Rng& rng = s.core.rng();
  s.params.theta = DeltaParams::draw_theta(rng);

  const Box& box = s.core.box();
  const std::size_t n = box.size();
  const auto& p = s.params;
  auto place = [&](QddsAgent& a, const std::vector<double>& r) {
    a.r = r;
    a.position.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      a.position[j] = from_internal(r[j], box.lower[j], box.upper[j], p);
    a.cost = s.core.evaluate(a.position);
    if (s.core.offer(a.cost, a.position)) s.best_r = a.r;
  };

  s.agents.resize(config.pool_size);
  std::vector<double> r(n);
  for (std::size_t it = 1; it <= 2; ++it) {
    s.core.set_t(it);
    for (auto& a : s.agents) {
      for (auto& v : r) v = rng.uniform(p.r_floor, p.r_ceil);
      place(a, r);
      std::vector<double> d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = delta_of_r(a.r[j], p);
      a.hist.prev2 = std::move(a.hist.prev);
      a.hist.prev = std::move(d);
    }
  }
  s.core.finish_init();
  s.core.set_t(3);
  return s;
}

void qdds_step_with_weight(QddsState& s, double rho) {
  const Box& box = s.core.box();
  const std::size_t n = box.size();
  const auto& p = s.params;
  const double alpha = learning_rate(s.core.t(), s.core.budget(), p);

  for (std::size_t idx : pick_agents(s.core.rng(), s.agents.size(), s.mode)) {
    QddsAgent& a = s.agents[idx];
    std::vector<double> delta_next(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = corrected_delta(a.hist.prev[j], a.hist.prev2[j], p, alpha);
      const double r_t = invert_delta(d, p);
      a.r[j] = std::clamp(blend(r_t, s.best_r[j], rho), p.r_floor, p.r_ceil);
      a.position[j] = from_internal(a.r[j], box.lower[j], box.upper[j], p);
      delta_next[j] = delta_of_r(a.r[j], p);
    }
    a.cost = s.core.evaluate(a.position);
    if (s.core.offer(a.cost, a.position)) s.best_r = a.r;
    a.hist.prev2 = std::move(a.hist.prev);
    a.hist.prev = std::move(delta_next);
  }
  s.core.advance();
}

void cqdds_step(QddsState& s) { qdds_step_with_weight(s, s.chaos.next(s.core.rng())); }

void qdds_uniform_step(QddsState& s) { qdds_step_with_weight(s, s.core.rng().uniform()); }

// --- PSO / QPSO ---------------------------------------------------------------------

SwarmState init_swarm(const ObjectiveSpec& spec, const RunConfig& config, double w0) {
  check_budget(config, 2);
  SwarmState s{RunCore(spec, config.dim, config.budget, config.seed), {}, w0, config.mode};
  const Box& box = s.core.box();
  const std::size_t n = box.size();
  s.particles.resize(config.pool_size);
  for (auto& pt : s.particles) {
    pt.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) pt.x[j] = s.core.rng().uniform(box.lower[j], box.upper[j]);
    pt.v.assign(n, 0.0);
    pt.pbest = pt.x;
    pt.cost = pt.pbest_cost = s.core.evaluate(pt.x);
    s.core.offer(pt.cost, pt.x);
  }
  s.core.finish_init();
  s.core.set_t(2);
  return s;
}

std::vector<double> qpso_mbest(std::span<const std::vector<double>> pbests) {
  if (pbests.empty()) throw std::invalid_argument("qpso_mbest needs at least one pbest");
  std::vector<double> m(pbests.front().size(), 0.0);
  for (const auto& p : pbests)
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += p[j];
  for (auto& v : m) v /= static_cast<double>(pbests.size());
  return m;
}

double qpso_move(double x, double pbest, double gbest, double mbest, double beta, double phi,
                 double u, bool plus) {
  const double attractor = phi * pbest + (1.0 - phi) * gbest;
  const double spread = beta * std::abs(mbest - x) * std::log(1.0 / u);
  return plus ? attractor + spread : attractor - spread;
}

namespace {

void settle(SwarmState& s, Particle& pt) {
  pt.cost = s.core.evaluate(pt.x);
  if (pt.cost < pt.pbest_cost) {
    pt.pbest_cost = pt.cost;
    pt.pbest = pt.x;
  }
  s.core.offer(pt.cost, pt.x);
}

}  // namespace

void qpso_step(SwarmState& s, const QpsoParams& params) {
  const Box& box = s.core.box();
  const std::size_t n = box.size();
  Rng& rng = s.core.rng();
  const double beta = params.beta(s.core.t(), s.core.budget());

  std::vector<std::vector<double>> pbests;
  pbests.reserve(s.particles.size());
  for (const auto& pt : s.particles) pbests.push_back(pt.pbest);
  const std::vector<double> mbest = qpso_mbest(pbests);

  for (std::size_t idx : pick_agents(rng, s.particles.size(), s.mode)) {
    Particle& pt = s.particles[idx];
    const std::vector<double> gbest = s.core.best_position();
    for (std::size_t j = 0; j < n; ++j) {
      const double phi = rng.uniform_open();
      const double u = rng.uniform_open();
      const bool plus = rng.coin();
      const double next = qpso_move(pt.x[j], pt.pbest[j], gbest[j], mbest[j], beta, phi, u, plus);
      pt.x[j] = std::clamp(next, box.lower[j], box.upper[j]);
    }
    settle(s, pt);
  }
  s.core.advance();
}

double pso_velocity(double v, double x, double pbest, double gbest, double w, const PsoParams& p,
                    double u1, double u2) {
  return w * v + p.c1 * u1 * (pbest - x) + p.c2 * u2 * (gbest - x);
}

void pso_step(SwarmState& s, const PsoParams& params) {
  const Box& box = s.core.box();
  const std::size_t n = box.size();
  Rng& rng = s.core.rng();

  for (std::size_t idx : pick_agents(rng, s.particles.size(), s.mode)) {
    Particle& pt = s.particles[idx];
    const std::vector<double> gbest = s.core.best_position();
    for (std::size_t j = 0; j < n; ++j) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      const double v_max = params.v_max_fraction * (box.upper[j] - box.lower[j]);
      const double v = pso_velocity(pt.v[j], pt.x[j], pt.pbest[j], gbest[j], s.w, params, u1, u2);
      pt.v[j] = std::clamp(v, -v_max, v_max);
      pt.x[j] = std::clamp(pt.x[j] + pt.v[j], box.lower[j], box.upper[j]);
    }
    settle(s, pt);
  }
  s.w *= params.damping;
  s.core.advance();
}

// --- uniform interface -------------------------------------------------------------

namespace {

class QddsOptimizer final : public Optimizer {
public:
  explicit QddsOptimizer(bool chaotic) : chaotic_(chaotic) {}
  Algorithm algorithm() const override {
    return chaotic_ ? Algorithm::cqdds : Algorithm::qdds_uniform;
  }
  RunResult run(const ObjectiveSpec& spec, const RunConfig& config) const override {
    QddsState s = init_qdds(spec, config);
    while (!s.core.done()) chaotic_ ? cqdds_step(s) : qdds_uniform_step(s);
    return s.core.result();
  }

private:
  bool chaotic_;
};

class QpsoOptimizer final : public Optimizer {
public:
  Algorithm algorithm() const override { return Algorithm::qpso; }
  RunResult run(const ObjectiveSpec& spec, const RunConfig& config) const override {
    SwarmState s = init_swarm(spec, config, 0.0);
    while (!s.core.done()) qpso_step(s, config.qpso);
    return s.core.result();
  }
};

class PsoOptimizer final : public Optimizer {
public:
  explicit PsoOptimizer(bool damped) : damped_(damped) {}
  Algorithm algorithm() const override {
    return damped_ ? Algorithm::pso_damped : Algorithm::pso_canonical;
  }
  RunResult run(const ObjectiveSpec& spec, const RunConfig& config) const override {
    const PsoParams params =
        config.pso.value_or(damped_ ? PsoParams::damped() : PsoParams::canonical());
    params.validate();
    SwarmState s = init_swarm(spec, config, params.w0);
    while (!s.core.done()) pso_step(s, params);
    return s.core.result();
  }

private:
  bool damped_;
};

class ExternalReference final : public Optimizer {
public:
  explicit ExternalReference(Algorithm a) : algorithm_(a) {}
  Algorithm algorithm() const override { return algorithm_; }
  RunResult run(const ObjectiveSpec&, const RunConfig&) const override {
    throw std::logic_error(std::string(algorithm_id(algorithm_)) +
                           ": not implemented (external reference)");
  }

private:
  Algorithm algorithm_;
};

}  // namespace

std::unique_ptr<Optimizer> make_optimizer(Algorithm a) {
  switch (a) {
    case Algorithm::cqdds:
      return std::make_unique<QddsOptimizer>(true);
    case Algorithm::qdds_uniform:
      return std::make_unique<QddsOptimizer>(false);
    case Algorithm::qpso:
      return std::make_unique<QpsoOptimizer>();
    case Algorithm::pso_damped:
      return std::make_unique<PsoOptimizer>(true);
    case Algorithm::pso_canonical:
      return std::make_unique<PsoOptimizer>(false);
    default:
      return std::make_unique<ExternalReference>(a);
  }
}

RunResult run(Algorithm a, const ObjectiveSpec& spec, const RunConfig& config) {
  return make_optimizer(a)->run(spec, config);
}

}  // namespace cqdds
