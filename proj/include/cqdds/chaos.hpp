#pragma once

#include <cstdint>
#include <vector>

#include "cqdds/rng.hpp"

namespace cqdds {

/// Chebyshev chaotic weight source, rho_t = |cos(t * acos(rho_{t-1}))|.
///
/// The raw map lives on [-1, 1]; emitted weights are folded into [0, 1] by
/// absolute value. When the orbit lands on a fixed point (|raw| within 1e-12
/// of 1, or of 0) it is reseeded uniformly in (0.05, 0.95) from the run's
/// stream passed to next(). One instance per run, single writer.
class ChebyshevMap {
public:
  static constexpr double kDefaultRho0 = 0.7;
  static constexpr double kDegenerateEps = 1e-12;

  /// Throws std::invalid_argument unless 0 < rho0 < 1.
  explicit ChebyshevMap(double rho0 = kDefaultRho0);

  /// Advances t by one and returns the new weight.
  double next(Rng& stream);

  double rho() const { return rho_; }
  std::uint64_t t() const { return t_; }
  std::uint64_t reseed_count() const { return reseeds_; }

private:
  double rho_;
  std::uint64_t t_ = 1;
  std::uint64_t reseeds_ = 0;
};

/// First `n` weights of a map seeded with `seed` (stream and rho0 both fixed
/// by the arguments).
std::vector<double> sample_sequence(std::uint64_t seed, std::size_t n,
                                    double rho0 = ChebyshevMap::kDefaultRho0);

}  // namespace cqdds
