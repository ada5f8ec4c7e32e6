#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cqdds/benchmark.hpp"
#include "cqdds/chaos.hpp"
#include "cqdds/delta.hpp"
#include "cqdds/rng.hpp"

namespace cqdds {

enum class Algorithm {
  cqdds,
  qdds_uniform,
  qpso,
  pso_damped,
  pso_canonical,
  // Competitors defined elsewhere; registered so ids resolve, but they refuse to run.
  sca,
  dfa,
  alo,
  woa,
  fa,
};

std::string_view algorithm_id(Algorithm a);
Algorithm parse_algorithm(std::string_view id);
bool is_external(Algorithm a);
/// The five algorithms implemented here, in CLI order.
const std::vector<Algorithm>& native_algorithms();

enum class SwarmMode { one_agent, full_swarm };

std::string_view swarm_mode_id(SwarmMode m);
SwarmMode parse_swarm_mode(std::string_view id);

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double cost = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

struct PsoParams {
  double w0 = 0.9;
  double damping = 1.0;  // per-iteration inertia multiplier
  double c1 = 2.0;
  double c2 = 2.0;
  double v_max_fraction = 0.2;  // of the box width

  void validate() const;
  static PsoParams damped() { return PsoParams{.damping = 0.95}; }
  static PsoParams canonical() { return PsoParams{}; }
};

struct QpsoParams {
  double beta_hi = 1.0;
  double beta_lo = 0.5;

  /// Contraction-expansion coefficient at iteration t of t_max.
  double beta(std::size_t t, std::size_t t_max) const;
};

struct RunConfig {
  std::size_t budget = 1000;  // iterations, including initialization
  std::uint64_t seed = 0;
  std::size_t dim = 30;  // ignored by fixed-dim objectives
  std::size_t pool_size = 50;
  SwarmMode mode = SwarmMode::one_agent;
  DeltaParams delta;  // theta is overwritten by the per-run draw
  std::optional<PsoParams> pso;  // defaults depend on the algorithm
  QpsoParams qpso;
};

struct RunResult {
  double best_cost = 0.0;
  std::vector<double> best_position;
  double initial_best_cost = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::size_t evaluations = 0;
  std::size_t init_evaluations = 0;
  std::size_t iterations = 0;
  // Invariant audit counters; both stay zero for a correct run.
  std::size_t monotonicity_violations = 0;
  std::size_t out_of_box_evaluations = 0;
};

/// State shared by every optimizer: objective, stream, gbest and audit trail.
class RunCore {
public:
  RunCore(const ObjectiveSpec& spec, std::size_t dim, std::size_t budget, std::uint64_t seed);

  /// Evaluates x, counting the call and auditing the box.
  double evaluate(std::span<const double> x);

  /// Strict-improvement gbest update. Returns true when x became the best.
  bool offer(double cost, std::span<const double> x);

  /// Ends the current iteration; audits bestcost monotonicity.
  void advance();

  /// Snapshots the current gbest as the post-initialization baseline.
  void finish_init();

  RunResult result() const;

  const ObjectiveSpec& spec() const { return *spec_; }
  const Box& box() const { return box_; }
  std::size_t dim() const { return box_.size(); }
  std::size_t t() const { return t_; }
  std::size_t budget() const { return budget_; }
  bool done() const { return t_ > budget_; }
  double best_cost() const { return best_cost_; }
  const std::vector<double>& best_position() const { return best_position_; }
  const std::vector<TrajectoryPoint>& trajectory() const { return trajectory_; }
  std::size_t evaluations() const { return evaluations_; }
  Rng& rng() { return rng_; }

  void set_t(std::size_t t) { t_ = t; }

private:
  const ObjectiveSpec* spec_;
  Box box_;
  std::size_t budget_;
  Rng rng_;
  std::size_t t_ = 1;
  double best_cost_;
  double audited_best_;
  double initial_best_ = 0.0;
  std::vector<double> best_position_;
  std::vector<TrajectoryPoint> trajectory_;
  std::size_t evaluations_ = 0;
  std::size_t init_evaluations_ = 0;
  std::size_t violations_ = 0;
  std::size_t out_of_box_ = 0;
};

// --- QDDS family -------------------------------------------------------------

struct QddsAgent {
  std::vector<double> r;  // internal coordinates
  DeltaHistory hist;
  std::vector<double> position;
  double cost = 0.0;
};

struct QddsState {
  RunCore core;
  DeltaParams params;
  std::vector<QddsAgent> agents;
  std::vector<double> best_r;
  ChebyshevMap chaos;
  SwarmMode mode = SwarmMode::one_agent;
};

/// Convex blend rho * r_t + (1 - rho) * r_gbest.
double blend(double r_t, double r_gbest, double rho);

/// Draws theta and two warm-up positions per agent; leaves t = 3.
QddsState init_qdds(const ObjectiveSpec& spec, const RunConfig& config);

/// One iteration using a caller-supplied weight (shared by all updated agents).
void qdds_step_with_weight(QddsState& s, double rho);

/// One iteration with the Chebyshev weight.
void cqdds_step(QddsState& s);

/// One iteration with rho ~ Uniform(0, 1) in place of the chaotic map.
void qdds_uniform_step(QddsState& s);

// --- PSO / QPSO --------------------------------------------------------------

struct Particle {
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> pbest;
  double cost = 0.0;
  double pbest_cost = 0.0;
};

struct SwarmState {
  RunCore core;
  std::vector<Particle> particles;
  double w = 0.0;
  SwarmMode mode = SwarmMode::one_agent;
};

/// Uniform positions, zero velocities, pbest = start; leaves t = 2.
SwarmState init_swarm(const ObjectiveSpec& spec, const RunConfig& config, double w0);

/// Componentwise mean of personal bests.
std::vector<double> qpso_mbest(std::span<const std::vector<double>> pbests);

/// X' = p +/- beta |mbest - X| ln(1/u) with p = phi pbest + (1 - phi) gbest.
double qpso_move(double x, double pbest, double gbest, double mbest, double beta, double phi,
                 double u, bool plus);

void qpso_step(SwarmState& s, const QpsoParams& params);

double pso_velocity(double v, double x, double pbest, double gbest, double w, const PsoParams& p,
                    double u1, double u2);

void pso_step(SwarmState& s, const PsoParams& params);

// --- uniform interface -------------------------------------------------------

class Optimizer {
public:
  virtual ~Optimizer() = default;
  virtual Algorithm algorithm() const = 0;
  virtual RunResult run(const ObjectiveSpec& spec, const RunConfig& config) const = 0;
};

/// External competitors resolve to stubs whose run() throws std::logic_error.
std::unique_ptr<Optimizer> make_optimizer(Algorithm a);

/// Deterministic for a fixed (algorithm, spec, config).
RunResult run(Algorithm a, const ObjectiveSpec& spec, const RunConfig& config);

}  // namespace cqdds
