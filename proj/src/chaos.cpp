#include "cqdds/chaos.hpp"

#include <cmath>
#include <stdexcept>

namespace cqdds {

ChebyshevMap::ChebyshevMap(double rho0) : rho_(rho0) {
  if (!(rho0 > 0.0 && rho0 < 1.0))
    throw std::invalid_argument("chebyshev rho0 must lie in (0, 1)");
}

double ChebyshevMap::next(Rng& stream) {
  ++t_;
  const double raw = std::cos(static_cast<double>(t_) * std::acos(rho_));
  const double folded = std::abs(raw);
  if (folded >= 1.0 - kDegenerateEps || folded <= kDegenerateEps) {
    rho_ = stream.uniform(0.05, 0.95);
    ++reseeds_;
  } else {
    rho_ = folded;
  }
  return rho_;
}

std::vector<double> sample_sequence(std::uint64_t seed, std::size_t n, double rho0) {
  if (n == 0) throw std::invalid_argument("sample_sequence needs n >= 1");
  Rng stream(seed);
  ChebyshevMap map(rho0);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(map.next(stream));
  return out;
}

}  // namespace cqdds
