#include "cqdds/delta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqdds {

void DeltaParams::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("delta: k must be positive");
  if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi))
    throw std::invalid_argument("delta: need 0 < alpha_lo <= alpha_hi");
  if (!(r_floor > 0.0 && r_floor < r_ceil))
    throw std::invalid_argument("delta: need 0 < r_floor < r_ceil");
}

double DeltaParams::draw_theta(Rng& rng) { return 1e-3 * rng.normal(0.0, 0.5); }

double delta_of_r(double r, const DeltaParams& p) {
  if (!std::isfinite(r) || r < 0.0 || r > p.r_ceil)
    throw std::domain_error("delta_of_r: r outside the internal domain");
  const double kr = p.k * r;
  return std::exp(2.0 * kr) - 5.0 * std::exp(-2.0 * kr) + 4.0 * kr + 4.0;
}

double delta_slope(double r, double k) {
  return 2.0 * k * std::exp(2.0 * k * r) + 10.0 * k * std::exp(-2.0 * k * r) + 4.0 * k;
}

double invert_delta(double delta, const DeltaParams& p) {
  if (!std::isfinite(delta)) throw std::domain_error("invert_delta: non-finite delta");
  double lo = p.r_floor, hi = p.r_ceil;
  const double d_lo = delta_of_r(lo, p), d_hi = delta_of_r(hi, p);
  if (delta <= d_lo) return lo;
  if (delta >= d_hi) return hi;

  // Start from the linear interpolant; the bracket shrinks on every step.
  double r = lo + (hi - lo) * (delta - d_lo) / (d_hi - d_lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = delta_of_r(r, p) - delta;
    if (std::abs(residual) <= 1e-10 * std::abs(delta)) return r;
    if (residual > 0.0)
      hi = r;
    else
      lo = r;
    double next = r - residual / delta_slope(r, p.k);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == r || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    r = next;
  }
  return r;
}

double learning_rate(std::size_t t, std::size_t t_max, const DeltaParams& p) {
  if (t_max < 2) throw std::invalid_argument("learning_rate: t_max must be >= 2");
  if (t < 1 || t > t_max) throw std::invalid_argument("learning_rate: t outside [1, t_max]");
  const double frac = static_cast<double>(t - 1) / static_cast<double>(t_max - 1);
  return p.alpha_hi - (p.alpha_hi - p.alpha_lo) * frac;
}

double corrected_delta(double prev, double prev2, const DeltaParams& p, double alpha) {
  const double grad = prev - prev2;
  const double step = p.theta * grad * alpha;
  double out = prev;
  if (prev > 2.0 * prev2) {
    out = grad > 0.0 ? prev - step : prev + step;
  } else if (prev < 0.5 * prev2) {
    out = grad < 0.0 ? prev - step : prev + step;
  }
  return std::clamp(out, delta_of_r(p.r_floor, p), delta_of_r(p.r_ceil, p));
}

double to_internal(double x, double lo, double hi, const DeltaParams& p) {
  return p.r_floor + (x - lo) / (hi - lo) * (p.r_ceil - p.r_floor);
}

double from_internal(double r, double lo, double hi, const DeltaParams& p) {
  const double x = lo + (r - p.r_floor) / (p.r_ceil - p.r_floor) * (hi - lo);
  return std::clamp(x, lo, hi);
}

}  // namespace cqdds
