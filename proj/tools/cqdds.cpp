// cqdds: trial matrices, reports, trajectory and chaos exports.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqdds/harness.hpp"

namespace fs = std::filesystem;
using namespace cqdds;
using namespace cqdds::harness;

namespace {

struct RunFlags {
  std::string config_file;
  std::string algo;
  std::string function;
  std::size_t dim = 0;
  std::size_t iters = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::string swarm_mode;
  std::string out;
  std::string format;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "key = value file; flags override it");
  cmd->add_option("--algo", f.algo, "comma-separated algorithm ids");
  cmd->add_option("--function", f.function, "comma-separated ids F1..F23");
  cmd->add_option("--dim", f.dim, "dimension of variable-dim functions");
  cmd->add_option("--iters", f.iters, "iterations per run");
  cmd->add_option("--trials", f.trials, "independent trials per cell");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--swarm-mode", f.swarm_mode, "one-agent | full-swarm");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig resolve(const CLI::App* cmd, const RunFlags& f) {
  ExperimentConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw std::runtime_error("cannot read config " + f.config_file);
    apply_config(parse_config(in), c);
  }
  std::map<std::string, std::string> kv;
  auto set = [&](const char* flag, const char* key, const std::string& v) {
    if (cmd->count(flag)) kv[key] = v;
  };
  set("--algo", "algo", f.algo);
  set("--function", "function", f.function);
  set("--dim", "dim", std::to_string(f.dim));
  set("--iters", "iters", std::to_string(f.iters));
  set("--trials", "trials", std::to_string(f.trials));
  set("--seed", "seed", std::to_string(f.seed));
  set("--workers", "workers", std::to_string(f.workers));
  set("--swarm-mode", "swarm-mode", f.swarm_mode);
  set("--out", "out", f.out);
  set("--format", "format", f.format);
  apply_config(kv, c);
  c.validate();
  return c;
}

void write_trajectory(const fs::path& dir, const TrialRecord& r) {
  fs::create_directories(dir);
  const fs::path path = dir / trajectory_file_name(r);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_trajectory_csv(os, r.trajectory);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C-QDDS benchmark harness"};
  app.require_subcommand(1);

  RunFlags run_flags;
  bool with_trajectories = false;
  auto* run_cmd = app.add_subcommand("run", "execute a trials x algorithms x functions matrix");
  add_run_flags(run_cmd, run_flags);
  run_cmd->add_flag("--trajectories", with_trajectories, "also write trajectory-<key>.csv files");

  std::string records_path, fixture_path, report_out = "report", reference;
  std::size_t fixture_n = 30;
  int tie_digits = 0;
  auto* report_cmd = app.add_subcommand("report", "summary, t/d/g, win/tie/loss, ranks, precision");
  auto* rec_opt = report_cmd->add_option("--records", records_path, "records.csv from `run`");
  auto* fix_opt = report_cmd->add_option("--fixture", fixture_path, "published-table fixture CSV");
  rec_opt->excludes(fix_opt);
  report_cmd->add_option("--n", fixture_n, "trials behind each fixture row");
  report_cmd->add_option("--reference", reference, "algorithm compared against the rest");
  report_cmd->add_option("--tie-digits", tie_digits,
                         "round to this many significant figures before win/tie/loss (0: exact)");
  report_cmd->add_option("--out", report_out, "output directory");

  RunFlags traj_flags;
  std::size_t traj_trial = 0;
  auto* traj_cmd = app.add_subcommand("trajectory", "re-run trials and export gbest trajectories");
  add_run_flags(traj_cmd, traj_flags);
  traj_cmd->add_option("--trial", traj_trial, "trial index to export");

  std::uint64_t chaos_seed = 0;
  std::size_t chaos_n = 1000;
  std::string chaos_out;
  auto* chaos_cmd = app.add_subcommand("dump-chaos", "Chebyshev weight sequence as CSV");
  chaos_cmd->add_option("--seed", chaos_seed, "stream seed");
  chaos_cmd->add_option("--n", chaos_n, "number of weights");
  chaos_cmd->add_option("--out", chaos_out, "file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const ExperimentConfig c = resolve(run_cmd, run_flags);
      const auto records = run_matrix(c);
      persist_records(c, records);
      if (with_trajectories)
        for (const auto& r : records) write_trajectory(c.output_dir, r);
      std::cerr << records.size() << " records -> " << c.output_dir.string() << '\n';
    } else if (*report_cmd) {
      ReportOptions opts;
      opts.reference = reference;
      opts.tie_sig_digits = tie_digits;
      ComparisonReport rep;
      if (!fixture_path.empty()) {
        std::ifstream in(fixture_path);
        if (!in) throw std::runtime_error("cannot read " + fixture_path);
        rep = build_report(read_fixture(in), fixture_n, opts);
      } else if (!records_path.empty()) {
        std::ifstream in(records_path);
        if (!in) throw std::runtime_error("cannot read " + records_path);
        rep = build_report(read_records_csv(in), opts);
      } else {
        throw std::invalid_argument("report needs --records or --fixture");
      }
      write_report(rep, report_out);
      for (const auto& g : rep.gaps)
        std::cerr << "gap: " << g.function << ' ' << g.algorithm << ": " << g.reason << '\n';
    } else if (*traj_cmd) {
      ExperimentConfig c = resolve(traj_cmd, traj_flags);
      c.trials = traj_trial + 1;  // sub-seeds depend on the index only
      for (const auto& r : run_matrix(c))
        if (r.trial_index == traj_trial) write_trajectory(c.output_dir, r);
    } else if (*chaos_cmd) {
      if (chaos_out.empty()) {
        write_chaos_csv(std::cout, chaos_seed, chaos_n);
      } else {
        std::ofstream os(chaos_out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + chaos_out);
        write_chaos_csv(os, chaos_seed, chaos_n);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
