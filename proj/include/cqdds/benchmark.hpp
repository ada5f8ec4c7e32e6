#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqdds/rng.hpp"

namespace cqdds {

enum class Modality { unimodal, multimodal, multimodal_fixed_dim };

/// Per-dimension search box.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
};

using Evaluator = double (*)(std::span<const double> x, Rng* noise);

/// One of the 23 benchmark objectives F1..F23.
struct ObjectiveSpec {
  int id = 0;  // 1..23
  std::string name;
  Modality modality = Modality::unimodal;
  std::optional<std::size_t> fixed_dim;  // empty: any dim >= 2
  std::size_t default_dim = 30;
  // Variable-dim boxes are uniform; F5 scales its bound with n.
  double lower = 0.0;
  double upper = 0.0;
  bool bound_scales_with_dim = false;
  // Fixed-dim boxes may differ per dimension (Branin).
  std::vector<double> fixed_lower;
  std::vector<double> fixed_upper;
  double known_min_value = 0.0;
  // Optimum location: either one value repeated n times, or an explicit point.
  std::optional<double> optimum_fill;
  std::vector<double> optimum_point;
  Evaluator eval = nullptr;

  std::string key() const { return "F" + std::to_string(id); }

  /// Dimensionality to use when the caller asks for `requested`.
  /// Fixed-dim objectives ignore the request.
  std::size_t resolve_dim(std::size_t requested) const;

  /// Throws std::invalid_argument when `n` is not admissible.
  void check_dim(std::size_t n) const;

  Box box(std::size_t n) const;

  std::optional<std::vector<double>> known_min_position(std::size_t n) const;
};

/// Coefficient tables for F14, F15, F19, F20 and F21-F23.
struct CoefficientTable {
  std::array<double, 11> kowalik_a;
  std::array<double, 11> kowalik_b;
  std::array<std::array<double, 25>, 2> foxholes_a;
  std::array<std::array<double, 3>, 4> hartmann3_a;
  std::array<double, 4> hartmann3_c;
  std::array<std::array<double, 3>, 4> hartmann3_p;
  std::array<std::array<double, 6>, 4> hartmann6_a;
  std::array<double, 4> hartmann6_c;
  std::array<std::array<double, 6>, 4> hartmann6_p;
  std::array<std::array<double, 4>, 10> shekel_a;
  std::array<double, 10> shekel_c;
};

const CoefficientTable& coefficients();

/// Boundary penalty: k(x-a)^m above a, k(-x-a)^m below -a, zero between.
double penalty_u(double x, double a, double k, double m);

/// y_i = 1 + (x_i + 1) / 4.
double penalized_y(double x);

/// F1..F23 in order.
const std::vector<ObjectiveSpec>& suite();

/// Lookup by "F1".."F23"; throws std::invalid_argument for unknown ids.
const ObjectiveSpec& find_objective(std::string_view key);

/// Evaluates `x`. Rejects a wrong dimensionality or non-finite components.
/// F7 draws its additive noise from `noise`; without a source the noise term
/// is zero.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x,
                Rng* noise = nullptr);

}  // namespace cqdds
