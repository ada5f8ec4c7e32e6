#include "cqdds/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqdds {

namespace {

using std::numbers::pi;

double sq(double v) { return v * v; }

const CoefficientTable kTable = [] {
  CoefficientTable t{};
  t.kowalik_a = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                 0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  // The printed column holds reciprocals of b_i.
  constexpr std::array<double, 11> b_inv = {0.25, 0.5, 1,  2,  4, 6,
                                            8,    10,  12, 14, 16};
  for (std::size_t i = 0; i < b_inv.size(); ++i) t.kowalik_b[i] = 1.0 / b_inv[i];

  constexpr std::array<double, 5> grid = {-32, -16, 0, 16, 32};
  for (std::size_t j = 0; j < 25; ++j) {
    t.foxholes_a[0][j] = grid[j % 5];
    t.foxholes_a[1][j] = grid[j / 5];
  }

  t.hartmann3_a = {{{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}}};
  t.hartmann3_c = {1, 1.2, 3, 3.2};
  t.hartmann3_p = {{{0.3689, 0.1170, 0.2673},
                    {0.4699, 0.4387, 0.7470},
                    {0.1091, 0.8732, 0.5547},
                    {0.038150, 0.5743, 0.8828}}};

  t.hartmann6_a = {{{10, 3, 17, 3.5, 1.7, 8},
                    {0.5, 10, 17, 0.1, 8, 14},
                    {3, 3.5, 1.7, 10, 17, 8},
                    {17, 8, 0.05, 10, 0.1, 14}}};
  t.hartmann6_c = {1, 1.2, 3, 3.2};
  t.hartmann6_p = {{{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                    {0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650},
                    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}};

  t.shekel_a = {{{4, 4, 4, 4},
                 {1, 1, 1, 1},
                 {8, 8, 8, 8},
                 {6, 6, 6, 6},
                 {3, 7, 3, 7},
                 {2, 9, 2, 9},
                 {5, 5, 3, 3},
                 {8, 1, 8, 1},
                 {6, 2, 6, 2},
                 {7, 3.6, 7, 3.6}}};
  t.shekel_c = {0.1, 0.2, 0.4, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
  return t;
}();

// --- F1..F7 -----------------------------------------------------------------

double sphere(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double schwefel_2_22(std::span<const double> x, Rng*) {
  double s = 0.0, p = 1.0;
  for (double v : x) {
    s += std::abs(v);
    p *= std::abs(v);
  }
  return s + p;
}

double schwefel_1_2(std::span<const double> x, Rng*) {
  double s = 0.0, prefix = 0.0;
  for (double v : x) {
    prefix += v;
    s += prefix * prefix;
  }
  return s;
}

double schwefel_2_21(std::span<const double> x, Rng*) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double rosenbrock(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
  return s;
}

// Printed without the floor of the classic step function.
double step(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (double v : x) s += sq(v + 0.5);
  return s;
}

double quartic_noise(std::span<const double> x, Rng* noise) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sq(sq(x[i]));
  return s + (noise != nullptr ? noise->uniform() : 0.0);
}

// --- F8..F13 ----------------------------------------------------------------

double schwefel_2_26(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (double v : x) s += v * std::sin(std::sqrt(std::abs(v)));
  return -s;
}

double rastrigin(std::span<const double> x, Rng*) {
  constexpr double a = 10.0;
  double s = a * static_cast<double>(x.size());
  for (double v : x) s += v * v - a * std::cos(2.0 * pi * v);
  return s;
}

double ackley(std::span<const double> x, Rng*) {
  const double n = static_cast<double>(x.size());
  double sum_sq = 0.0, sum_cos = 0.0;
  for (double v : x) {
    sum_sq += v * v;
    sum_cos += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) - std::exp(sum_cos / n) +
         20.0 + std::numbers::e;
}

double griewank(std::span<const double> x, Rng*) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + s / 4000.0 - p;
}

double penalized_1(std::span<const double> x, Rng*) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  std::transform(x.begin(), x.end(), y.begin(), penalized_y);
  double s = 10.0 * sq(std::sin(pi * y[0]));
  for (std::size_t i = 0; i + 1 < n; ++i)
    s += sq(y[i] - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * y[i + 1])));
  s += sq(y[n - 1] - 1.0);
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * s + pen;
}

double penalized_2(std::span<const double> x, Rng*) {
  const std::size_t n = x.size();
  double s = sq(std::sin(3.0 * pi * x[0]));
  for (std::size_t i = 0; i + 1 < n; ++i)
    s += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i + 1])));
  s += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * s + pen;
}

// --- F14..F23 ---------------------------------------------------------------

double foxholes(std::span<const double> x, Rng*) {
  double s = 1.0 / 500.0;
  for (std::size_t j = 0; j < 25; ++j) {
    double inner = static_cast<double>(j + 1);
    for (std::size_t i = 0; i < 2; ++i) inner += std::pow(x[i] - kTable.foxholes_a[i][j], 6);
    s += 1.0 / inner;
  }
  return 1.0 / s;
}

double kowalik(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (std::size_t i = 0; i < 11; ++i) {
    const double b = kTable.kowalik_b[i];
    const double model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
    s += sq(kTable.kowalik_a[i] - model);
  }
  return s;
}

double six_hump_camel(std::span<const double> x, Rng*) {
  const double a = x[0], b = x[1];
  return 4 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4 * b * b +
         4 * std::pow(b, 4);
}

double branin(std::span<const double> x, Rng*) {
  const double a = x[0], b = x[1];
  return sq(b - 5.1 / (4 * pi * pi) * a * a + 5.0 / pi * a - 6.0) +
         10.0 * (1.0 - 1.0 / (8 * pi)) * std::cos(a) + 10.0;
}

double goldstein_price(std::span<const double> x, Rng*) {
  const double a = x[0], b = x[1];
  const double left =
      1 + sq(a + b + 1) * (19 - 14 * a + 3 * a * a - 14 * b + 6 * a * b + 3 * b * b);
  const double right = 30 + sq(2 * a - 3 * b) *
                                (18 - 32 * a + 12 * a * a + 48 * b - 36 * a * b + 27 * b * b);
  return left * right;
}

template <std::size_t N>
double hartmann(std::span<const double> x, const std::array<std::array<double, N>, 4>& a,
                const std::array<double, 4>& c, const std::array<std::array<double, N>, 4>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < N; ++j) inner += a[i][j] * sq(x[j] - p[i][j]);
    s += c[i] * std::exp(-inner);
  }
  return -s;
}

double hartmann3(std::span<const double> x, Rng*) {
  return hartmann<3>(x, kTable.hartmann3_a, kTable.hartmann3_c, kTable.hartmann3_p);
}

double hartmann6(std::span<const double> x, Rng*) {
  return hartmann<6>(x, kTable.hartmann6_a, kTable.hartmann6_c, kTable.hartmann6_p);
}

template <std::size_t M>
double shekel(std::span<const double> x, Rng*) {
  double s = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    double d = kTable.shekel_c[i];
    for (std::size_t j = 0; j < 4; ++j) d += sq(x[j] - kTable.shekel_a[i][j]);
    s += 1.0 / d;
  }
  return -s;
}

ObjectiveSpec variable(int id, std::string name, Modality mod, double lo, double hi,
                       double min_value, std::optional<double> fill, Evaluator eval) {
  ObjectiveSpec s;
  s.id = id;
  s.name = std::move(name);
  s.modality = mod;
  s.lower = lo;
  s.upper = hi;
  s.known_min_value = min_value;
  s.optimum_fill = fill;
  s.eval = eval;
  return s;
}

ObjectiveSpec fixed(int id, std::string name, std::vector<double> lo, std::vector<double> hi,
                    double min_value, std::vector<double> point, Evaluator eval) {
  ObjectiveSpec s;
  s.id = id;
  s.name = std::move(name);
  s.modality = Modality::multimodal_fixed_dim;
  s.fixed_dim = lo.size();
  s.default_dim = lo.size();
  s.fixed_lower = std::move(lo);
  s.fixed_upper = std::move(hi);
  s.known_min_value = min_value;
  s.optimum_point = std::move(point);
  s.eval = eval;
  return s;
}

std::vector<double> filled(std::size_t n, double v) { return std::vector<double>(n, v); }

std::vector<ObjectiveSpec> build_suite() {
  using M = Modality;
  std::vector<ObjectiveSpec> s;
  s.push_back(variable(1, "Sphere", M::unimodal, -100, 100, 0.0, 0.0, sphere));
  s.push_back(variable(2, "Schwefel's Problem 2.22", M::unimodal, -10, 10, 0.0, 0.0,
                       schwefel_2_22));
  s.push_back(variable(3, "Schwefel's Problem 1.2", M::unimodal, -100, 100, 0.0, 0.0,
                       schwefel_1_2));
  s.push_back(variable(4, "Schwefel's Problem 2.21", M::unimodal, -100, 100, 0.0, 0.0,
                       schwefel_2_21));
  auto f5 = variable(5, "Generalized Rosenbrock's Function", M::unimodal, -1, 1, 0.0, 1.0,
                     rosenbrock);
  f5.bound_scales_with_dim = true;
  s.push_back(f5);
  s.push_back(variable(6, "Step Function", M::unimodal, -100, 100, 0.0, -0.5, step));
  s.push_back(variable(7, "Quartic Function i.e. Noise", M::unimodal, -1.28, 1.28, 0.0,
                       std::nullopt, quartic_noise));
  s.push_back(variable(8, "Generalized Schwefel's Problem 2.26", M::multimodal, -500, 500,
                       -12569.5, 420.9687, schwefel_2_26));
  s.push_back(variable(9, "Generalized Rastrigin's Function", M::multimodal, -5.12, 5.12, 0.0,
                       0.0, rastrigin));
  s.push_back(variable(10, "Ackley's Function", M::multimodal, -32.768, 32.768, 0.0, 0.0,
                       ackley));
  s.push_back(variable(11, "Generalized Griewank Function", M::multimodal, -600, 600, 0.0, 0.0,
                       griewank));
  s.push_back(variable(12, "Generalized Penalized Function 1", M::multimodal, -50, 50, 0.0,
                       -1.0, penalized_1));
  s.push_back(variable(13, "Generalized Penalized Function 2", M::multimodal, -50, 50, 0.0,
                       1.0, penalized_2));
  s.push_back(fixed(14, "Shekel's Foxholes Function", filled(2, -65.536), filled(2, 65.536),
                    1.0, {-32, -32}, foxholes));
  s.push_back(fixed(15, "Kowalik's Function", filled(4, -5), filled(4, 5), 0.0003075,
                    {0.192833, 0.190836, 0.123117, 0.135766}, kowalik));
  s.push_back(fixed(16, "Six-Hump Camel-Back Function", filled(2, -5), filled(2, 5),
                    -1.0316285, {0.08984201368301331, -0.7126564032704135}, six_hump_camel));
  s.push_back(fixed(17, "Branin Function", {-5, 0}, {10, 15}, 0.398, {pi, 2.275}, branin));
  s.push_back(fixed(18, "Goldstein-Price Function", filled(2, -2), filled(2, 2), 3.0, {0, -1},
                    goldstein_price));
  s.push_back(fixed(19, "Hartman's Family Function 1", filled(3, 0), filled(3, 1), -3.86,
                    {0.114614, 0.555649, 0.852547}, hartmann3));
  s.push_back(fixed(20, "Hartman's Family Function 2", filled(6, 0), filled(6, 1), -3.86,
                    {0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573}, hartmann6));
  s.push_back(fixed(21, "Shekel's Family Function 1", filled(4, 0), filled(4, 10), -10.1532,
                    {4, 4, 4, 4}, shekel<5>));
  s.push_back(fixed(22, "Shekel's Family Function 2", filled(4, 0), filled(4, 10), -10.4029,
                    {4, 4, 4, 4}, shekel<7>));
  s.push_back(fixed(23, "Shekel's Family Function 3", filled(4, 0), filled(4, 10), -10.5364,
                    {4, 4, 4, 4}, shekel<10>));
  return s;
}

}  // namespace

bool Box::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  return true;
}

std::size_t ObjectiveSpec::resolve_dim(std::size_t requested) const {
  return fixed_dim ? *fixed_dim : requested;
}

void ObjectiveSpec::check_dim(std::size_t n) const {
  if (fixed_dim && n != *fixed_dim)
    throw std::invalid_argument(key() + " is fixed at dimension " + std::to_string(*fixed_dim) +
                                ", got " + std::to_string(n));
  if (!fixed_dim && n < 2)
    throw std::invalid_argument(key() + " needs dimension >= 2, got " + std::to_string(n));
}

Box ObjectiveSpec::box(std::size_t n) const {
  check_dim(n);
  if (fixed_dim) return {fixed_lower, fixed_upper};
  const double scale = bound_scales_with_dim ? static_cast<double>(n) : 1.0;
  return {std::vector<double>(n, lower * scale), std::vector<double>(n, upper * scale)};
}

std::optional<std::vector<double>> ObjectiveSpec::known_min_position(std::size_t n) const {
  check_dim(n);
  if (optimum_fill) return std::vector<double>(n, *optimum_fill);
  if (!optimum_point.empty()) return optimum_point;
  return std::nullopt;
}

const CoefficientTable& coefficients() { return kTable; }

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double penalized_y(double x) { return 1.0 + (x + 1.0) / 4.0; }

const std::vector<ObjectiveSpec>& suite() {
  static const std::vector<ObjectiveSpec> specs = build_suite();
  return specs;
}

const ObjectiveSpec& find_objective(std::string_view key) {
  for (const auto& s : suite())
    if (s.key() == key) return s;
  throw std::invalid_argument("unknown function id: " + std::string(key));
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> x, Rng* noise) {
  spec.check_dim(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw std::invalid_argument(spec.key() + ": non-finite component at index " +
                                  std::to_string(i));
  return spec.eval(x, noise);
}

}  // namespace cqdds
