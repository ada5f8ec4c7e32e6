#pragma once

#include <cstddef>
#include <vector>

#include "cqdds/rng.hpp"

namespace cqdds {

/// Constants of the delta dynamics. `theta` is drawn once per run.
struct DeltaParams {
  double k = 5.0;
  double theta = 0.0;
  double alpha_hi = 1.0;
  double alpha_lo = 0.3;
  double r_floor = 1e-6;
  double r_ceil = 1.0;

  /// Throws std::invalid_argument when an ordering constraint is broken.
  void validate() const;

  /// theta = 1e-3 * Normal(0, 0.5).
  static double draw_theta(Rng& rng);
};

/// delta_{t-1} and delta_{t-2}, one entry per dimension.
struct DeltaHistory {
  std::vector<double> prev;
  std::vector<double> prev2;
};

/// delta(r) = exp(2kr) - 5 exp(-2kr) + 4kr + 4.
/// Accepts r in [0, r_ceil]; r = 0 is admitted as a boundary probe.
double delta_of_r(double r, const DeltaParams& p);

/// d delta / dr, strictly positive.
double delta_slope(double r, double k);

/// Unique r in [r_floor, r_ceil] with delta_of_r(r) == delta. Out-of-range
/// values are clamped to the nearest endpoint first. Safeguarded Newton with
/// a bisection fallback; relative residual below 1e-10 within 200 steps.
double invert_delta(double delta, const DeltaParams& p);

/// Linear ramp from alpha_hi at t = 1 to alpha_lo at t = t_max.
double learning_rate(std::size_t t, std::size_t t_max, const DeltaParams& p);

/// Band correction for one dimension. Out of the band
/// [0.5 delta_{t-2}, 2 delta_{t-2}] the previous value is nudged by
/// theta * (delta_{t-1} - delta_{t-2}) * alpha; inside it is kept.
double corrected_delta(double prev, double prev2, const DeltaParams& p, double alpha);

/// Affine map [lo, hi] -> [r_floor, r_ceil] and back.
double to_internal(double x, double lo, double hi, const DeltaParams& p);
double from_internal(double r, double lo, double hi, const DeltaParams& p);

}  // namespace cqdds
