#include "cqdds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cqdds::stats {

namespace {

void require_pair(const SampleSummary& a, const SampleSummary& b) {
  if (a.n < 2 || b.n < 2) throw std::invalid_argument("comparison needs n >= 2 per sample");
  if (a.n != b.n) throw std::invalid_argument("comparison needs equal sample sizes");
}

// Signed ratio with the degenerate-denominator convention shared by t, d and g.
Effect ratio(double diff, double denom) {
  if (denom > 0.0) return {diff / denom, false};
  if (diff == 0.0) return {0.0, false};
  return {std::copysign(std::numeric_limits<double>::infinity(), diff), true};
}

}  // namespace

SampleSummary summarize(std::span<const double> costs) {
  if (costs.size() < 2) throw std::invalid_argument("summarize needs at least two costs");
  for (double c : costs)
    if (!std::isfinite(c)) throw std::invalid_argument("summarize: non-finite cost");
  const double n = static_cast<double>(costs.size());
  const double mean = std::accumulate(costs.begin(), costs.end(), 0.0) / n;
  double ss = 0.0;
  for (double c : costs) ss += (c - mean) * (c - mean);
  return {mean, std::sqrt(ss / (n - 1.0)), *std::min_element(costs.begin(), costs.end()),
          costs.size()};
}

TTest t_test(const SampleSummary& a, const SampleSummary& b) {
  require_pair(a, b);
  const double n = static_cast<double>(a.n);
  const Effect e = ratio(a.mean - b.mean, std::sqrt((a.std * a.std + b.std * b.std) / n));
  return {e.value, std::abs(e.value) > kTCritical, e.degenerate};
}

Effect cohens_d(const SampleSummary& a, const SampleSummary& b) {
  require_pair(a, b);
  return ratio(a.mean - b.mean, std::sqrt((a.std * a.std + b.std * b.std) / 2.0));
}

Effect hedges_g(const SampleSummary& a, const SampleSummary& b, HedgesMode mode) {
  require_pair(a, b);
  const double n1 = static_cast<double>(a.n), n2 = static_cast<double>(b.n);
  if (mode == HedgesMode::textbook) {
    const double pooled =
        ((n1 - 1.0) * a.std * a.std + (n2 - 1.0) * b.std * b.std) / (n1 + n2 - 2.0);
    return ratio(a.mean - b.mean, std::sqrt(pooled));
  }
  Effect d = cohens_d(a, b);
  if (!d.degenerate) d.value *= std::sqrt((2.0 * n1 - 2.0) / n1);
  return d;
}

EffectSizes compare(const SampleSummary& a, const SampleSummary& b) {
  const TTest t = t_test(a, b);
  const Effect d = cohens_d(a, b);
  return {t.t,
          t.significant,
          d.value,
          hedges_g(a, b, HedgesMode::textbook).value,
          hedges_g(a, b, HedgesMode::papermode).value,
          t.degenerate || d.degenerate};
}

std::vector<Outcome> rank_outcomes(std::span<const double> values, Direction direction) {
  if (values.size() < 2) throw std::invalid_argument("win/tie/loss needs >= 2 algorithms");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("win/tie/loss: non-finite value");
  const double best = direction == Direction::minimize
                          ? *std::min_element(values.begin(), values.end())
                          : *std::max_element(values.begin(), values.end());
  const auto holders = std::count(values.begin(), values.end(), best);
  std::vector<Outcome> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v != best)
      out.push_back(Outcome::loss);
    else
      out.push_back(holders == 1 ? Outcome::win : Outcome::tie);
  }
  return out;
}

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const double scale = std::pow(10.0, digits - 1 - exponent);
  return std::round(v * scale) / scale;
}

std::vector<WinTieLoss> win_tie_loss(const std::vector<std::vector<double>>& values,
                                     Direction direction, int sig_digits) {
  if (values.empty()) return {};
  const std::size_t algos = values.front().size();
  std::vector<WinTieLoss> table(algos);
  for (const auto& row : values) {
    if (row.size() != algos) throw std::invalid_argument("win/tie/loss: ragged value table");
    std::vector<double> cmp = row;
    if (sig_digits > 0)
      for (auto& v : cmp) v = round_significant(v, sig_digits);
    const auto outcomes = rank_outcomes(cmp, direction);
    for (std::size_t a = 0; a < algos; ++a) {
      switch (outcomes[a]) {
        case Outcome::win: ++table[a].win; break;
        case Outcome::tie: ++table[a].tie; break;
        case Outcome::loss: ++table[a].loss; break;
      }
    }
  }
  return table;
}

std::vector<std::size_t> dense_ranks(std::span<const double> row, bool higher_is_better) {
  std::vector<double> distinct(row.begin(), row.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (higher_is_better) std::reverse(distinct.begin(), distinct.end());
  std::vector<std::size_t> ranks;
  ranks.reserve(row.size());
  for (double v : row) {
    const auto it = std::find(distinct.begin(), distinct.end(), v);
    ranks.push_back(static_cast<std::size_t>(it - distinct.begin()) + 1);
  }
  return ranks;
}

std::vector<double> average_ranks(std::span<const WinTieLoss> table) {
  std::vector<double> wins, ties, losses;
  for (const auto& w : table) {
    wins.push_back(static_cast<double>(w.win));
    ties.push_back(static_cast<double>(w.tie));
    losses.push_back(static_cast<double>(w.loss));
  }
  const auto rw = dense_ranks(wins, true);
  const auto rt = dense_ranks(ties, true);
  const auto rl = dense_ranks(losses, false);
  std::vector<double> avg(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    avg[i] = static_cast<double>(rw[i] + rt[i] + rl[i]) / 3.0;
  return avg;
}

std::array<PrecisionPoint, 10> precision_curve(std::span<const double> costs) {
  if (costs.empty()) throw std::invalid_argument("precision_curve needs at least one cost");
  const auto [lo_it, hi_it] = std::minmax_element(costs.begin(), costs.end());
  const double lo = *lo_it, hi = *hi_it;
  std::array<PrecisionPoint, 10> curve{};
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double f = static_cast<double>(i + 1) / 10.0;
    curve[i].fraction = f;
    if (hi == lo) {
      curve[i].count = costs.size();
      continue;
    }
    const double threshold = lo + f * (hi - lo);
    curve[i].count = static_cast<std::size_t>(
        std::count_if(costs.begin(), costs.end(), [&](double c) { return c < threshold; }));
  }
  return curve;
}

}  // namespace cqdds::stats
