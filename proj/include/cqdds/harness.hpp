#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqdds/optimizers.hpp"
#include "cqdds/stats.hpp"

namespace cqdds::harness {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::vector<std::string> algorithms = {"cqdds"};
  std::vector<std::string> functions = {"F1"};
  std::size_t dim = 30;
  std::size_t iterations = 1000;
  std::size_t trials = 30;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  SwarmMode swarm_mode = SwarmMode::one_agent;
  std::filesystem::path output_dir = "results";
  OutputFormat format = OutputFormat::csv;

  /// Throws std::invalid_argument for unknown ids or out-of-range counts.
  void validate() const;
};

struct TrialRecord {
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  std::size_t trial_index = 0;
  std::uint64_t sub_seed = 0;
  double best_cost = 0.0;
  std::vector<double> best_position;
  std::size_t evaluations = 0;
  double wall_time_ms = 0.0;
  std::vector<TrajectoryPoint> trajectory;  // not persisted in records files
};

/// Stable hash of (master seed, algorithm id, function id, trial index):
/// FNV-1a over "algorithm|function|trial", folded with the master seed through
/// splitmix64.
std::uint64_t sub_seed(std::uint64_t master, std::string_view algorithm,
                       std::string_view function, std::size_t trial);

/// Canonical record order: algorithm id, function number, trial index.
void sort_records(std::vector<TrialRecord>& records);

/// Runs trials x algorithms x functions on `workers` threads. The returned set
/// is sorted canonically and independent of scheduling. Throws when two cells
/// would share a sub-seed.
std::vector<TrialRecord> run_matrix(const ExperimentConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& is);
void write_records_json(std::ostream& os, const std::vector<TrialRecord>& records);
void write_timings_csv(std::ostream& os, const std::vector<TrialRecord>& records);

/// Writes records.(csv|json) and timings.csv into config.output_dir.
void persist_records(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

// --- report ------------------------------------------------------------------

/// One published table row: summary statistics for (function, algorithm).
struct FixtureRow {
  std::string function;
  std::string algorithm;
  double mean = 0.0;
  double best = 0.0;
  double std = 0.0;
};

std::vector<FixtureRow> read_fixture(std::istream& is);

struct Cell {
  stats::SampleSummary summary;
  std::vector<double> costs;  // empty when built from a fixture
};

struct Comparison {
  std::string function;
  std::string competitor;
  bool missing = false;
  stats::EffectSizes effects;
};

struct Gap {
  std::string function;
  std::string algorithm;
  std::string reason;
};

struct PrecisionRow {
  std::string function;
  std::string algorithm;
  std::array<stats::PrecisionPoint, 10> curve;
};

struct ComparisonReport {
  std::vector<std::string> algorithms;
  std::vector<std::string> functions;
  std::string reference;
  std::map<std::pair<std::string, std::string>, Cell> cells;  // (function, algorithm)
  std::vector<Comparison> comparisons;
  // Rows "mean", "best", "std"; one entry per algorithm.
  std::map<std::string, std::vector<stats::WinTieLoss>> wtl;
  std::map<std::string, std::vector<double>> ranks;
  std::vector<std::string> wtl_functions;  // functions with complete rows
  std::vector<PrecisionRow> precision;
  std::vector<Gap> gaps;
};

struct ReportOptions {
  std::string reference;  // empty: "cqdds" / "C-QDDS" when present, else first
  int tie_sig_digits = 0;  // 0 compares exactly
};

ComparisonReport build_report(const std::vector<TrialRecord>& records,
                              const ReportOptions& options = {});
ComparisonReport build_report(const std::vector<FixtureRow>& fixture, std::size_t n,
                              const ReportOptions& options = {});

/// summary.csv, ttest.csv, effects.csv, wtl.csv, ranks.csv, precision.csv, gaps.csv.
void write_report(const ComparisonReport& report, const std::filesystem::path& dir);

// --- exports -----------------------------------------------------------------

/// Header "iteration,cost,x1,x2" plus one row per gbest improvement.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory);

std::string trajectory_file_name(const TrialRecord& record);

/// Header "index,weight" plus n rows.
void write_chaos_csv(std::ostream& os, std::uint64_t seed, std::size_t n);

// --- config file -------------------------------------------------------------

/// Flat "key = value" lines; '#' starts a comment. Throws on malformed lines.
std::map<std::string, std::string> parse_config(std::istream& is);

/// Applies known keys (algo, function, dim, iters, trials, seed, workers,
/// swarm-mode, out, format). Throws on unknown keys.
void apply_config(const std::map<std::string, std::string>& kv, ExperimentConfig& config);

std::vector<std::string> split_list(std::string_view s);

}  // namespace cqdds::harness
