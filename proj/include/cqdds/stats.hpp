#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cqdds::stats {

/// Two-sided critical value at alpha = 0.05, df = 58.
inline constexpr double kTCritical = 2.001717;

struct SampleSummary {
  double mean = 0.0;
  double std = 0.0;  // n - 1 denominator
  double min = 0.0;
  std::size_t n = 0;
};

/// Rejects n < 2 and non-finite entries.
SampleSummary summarize(std::span<const double> costs);

struct TTest {
  double t = 0.0;
  bool significant = false;
  bool degenerate = false;  // zero pooled variance with unequal means
};

/// Equal-n form t = (mean_a - mean_b) / sqrt((s_a^2 + s_b^2) / n).
TTest t_test(const SampleSummary& a, const SampleSummary& b);

struct Effect {
  double value = 0.0;
  bool degenerate = false;
};

/// d = (mean_a - mean_b) / sqrt((s_a^2 + s_b^2) / 2).
Effect cohens_d(const SampleSummary& a, const SampleSummary& b);

enum class HedgesMode { textbook, papermode };

/// textbook: pooled standard deviation with (n - 1) weights.
/// papermode: d * sqrt((2n - 2) / n), which matches the published g table.
Effect hedges_g(const SampleSummary& a, const SampleSummary& b, HedgesMode mode);

struct EffectSizes {
  double t_value = 0.0;
  bool significant = false;
  double cohens_d = 0.0;
  double hedges_g_textbook = 0.0;
  double hedges_g_papermode = 0.0;
  bool degenerate = false;
};

EffectSizes compare(const SampleSummary& a, const SampleSummary& b);

enum class Direction { minimize, maximize };

struct WinTieLoss {
  std::size_t win = 0;
  std::size_t tie = 0;
  std::size_t loss = 0;
};

enum class Outcome { win, tie, loss };

/// Per-entry outcome for one function: win = uniquely best, tie = shares the
/// best, loss otherwise.
std::vector<Outcome> rank_outcomes(std::span<const double> values, Direction direction);

/// Rounds to `digits` significant figures (table precision).
double round_significant(double v, int digits);

/// Accumulates outcomes across functions. `values[f][a]` is algorithm a on
/// function f. With `sig_digits > 0` values are rounded before comparison.
std::vector<WinTieLoss> win_tie_loss(const std::vector<std::vector<double>>& values,
                                     Direction direction, int sig_digits = 0);

/// Dense ranks per row (more wins, more ties, fewer losses rank first),
/// averaged over the three rows.
std::vector<double> average_ranks(std::span<const WinTieLoss> table);

/// Dense ranks of one row, ties sharing a rank. `higher_is_better` picks the order.
std::vector<std::size_t> dense_ranks(std::span<const double> row, bool higher_is_better);

struct PrecisionPoint {
  double fraction = 0.0;
  std::size_t count = 0;
};

/// Counts costs strictly below min + f (max - min) for f = 0.1 .. 1.0.
/// When every cost is equal each point reports n.
std::array<PrecisionPoint, 10> precision_curve(std::span<const double> costs);

}  // namespace cqdds::stats
