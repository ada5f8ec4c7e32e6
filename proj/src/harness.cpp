#include "cqdds/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "cqdds/chaos.hpp"

namespace cqdds::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

int function_number(std::string_view key) {
  if (key.size() < 2 || key[0] != 'F') return 0;
  int v = 0;
  std::from_chars(key.data() + 1, key.data() + key.size(), v);
  return v;
}

bool function_less(const std::string& a, const std::string& b) {
  const int na = function_number(a), nb = function_number(b);
  if (na != nb) return na < nb;
  return a < b;
}

std::string join_position(const std::vector<double>& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ' ';
    s += format_double(x[i]);
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  if (functions.empty()) throw std::invalid_argument("no functions selected");
  for (const auto& a : algorithms)
    if (is_external(parse_algorithm(a)))
      throw std::invalid_argument(a + ": not implemented (external reference)");
  for (const auto& f : functions) find_objective(f);
  if (iterations < 3) throw std::invalid_argument("iterations must be >= 3");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::uint64_t sub_seed(std::uint64_t master, std::string_view algorithm,
                       std::string_view function, std::size_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed(algorithm);
  feed("|");
  feed(function);
  feed("|");
  feed(std::to_string(trial));
  return mix64(mix64(master) ^ h);
}

void sort_records(std::vector<TrialRecord>& records) {
  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.function != b.function) return function_less(a.function, b.function);
    return a.trial_index < b.trial_index;
  });
}

std::vector<TrialRecord> run_matrix(const ExperimentConfig& config) {
  config.validate();

  std::vector<TrialRecord> jobs;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& a : config.algorithms)
    for (const auto& f : config.functions)
      for (std::size_t t = 0; t < config.trials; ++t) {
        TrialRecord r;
        r.algorithm = a;
        r.function = f;
        r.trial_index = t;
        r.sub_seed = sub_seed(config.master_seed, a, f, t);
        if (!seen.insert(r.sub_seed).second)
          throw std::runtime_error("sub-seed collision at " + a + "/" + f + "/" +
                                   std::to_string(t));
        jobs.push_back(std::move(r));
      }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      TrialRecord& r = jobs[i];
      try {
        const ObjectiveSpec& spec = find_objective(r.function);
        RunConfig rc;
        rc.budget = config.iterations;
        rc.seed = r.sub_seed;
        rc.dim = config.dim;
        rc.mode = config.swarm_mode;
        const auto start = std::chrono::steady_clock::now();
        RunResult res = run(parse_algorithm(r.algorithm), spec, rc);
        const auto stop = std::chrono::steady_clock::now();
        r.dim = spec.resolve_dim(config.dim);
        r.best_cost = res.best_cost;
        r.best_position = std::move(res.best_position);
        r.evaluations = res.evaluations;
        r.trajectory = std::move(res.trajectory);
        r.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t n_threads = std::min(config.workers, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  sort_records(jobs);
  return jobs;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad number: '" + std::string(s) + "'");
  return v;
}

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "algorithm,function,dim,trial,sub_seed,best_cost,evaluations,best_position\n";
  for (const auto& r : records)
    os << r.algorithm << ',' << r.function << ',' << r.dim << ',' << r.trial_index << ','
       << r.sub_seed << ',' << format_double(r.best_cost) << ',' << r.evaluations << ','
       << join_position(r.best_position) << '\n';
}

std::vector<TrialRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("records: empty input");
  std::vector<TrialRecord> out;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::invalid_argument("records: expected 8 fields: " + line);
    TrialRecord r;
    r.algorithm = f[0];
    r.function = f[1];
    r.dim = parse_size(f[2], "dim");
    r.trial_index = parse_size(f[3], "trial");
    r.sub_seed = parse_u64(f[4], "sub_seed");
    r.best_cost = parse_double(f[5]);
    r.evaluations = parse_size(f[6], "evaluations");
    for (const auto& tok : split(f[7], ' '))
      if (!tok.empty()) r.best_position.push_back(parse_double(tok));
    out.push_back(std::move(r));
  }
  return out;
}

void write_records_json(std::ostream& os, const std::vector<TrialRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records)
    arr.push_back({{"algorithm", r.algorithm},
                   {"function", r.function},
                   {"dim", r.dim},
                   {"trial", r.trial_index},
                   {"sub_seed", r.sub_seed},
                   {"best_cost", r.best_cost},
                   {"evaluations", r.evaluations},
                   {"best_position", r.best_position}});
  os << arr.dump(2) << '\n';
}

void write_timings_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "algorithm,function,trial,wall_time_ms\n";
  for (const auto& r : records)
    os << r.algorithm << ',' << r.function << ',' << r.trial_index << ','
       << format_double(r.wall_time_ms) << '\n';
}

void persist_records(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
  std::filesystem::create_directories(config.output_dir);
  if (config.format == OutputFormat::csv) {
    auto os = open_out(config.output_dir / "records.csv");
    write_records_csv(os, records);
  } else {
    auto os = open_out(config.output_dir / "records.json");
    write_records_json(os, records);
  }
  auto ts = open_out(config.output_dir / "timings.csv");
  write_timings_csv(ts, records);
}

// --- report ---------------------------------------------------------------------

std::vector<FixtureRow> read_fixture(std::istream& is) {
  std::string line;
  std::vector<FixtureRow> rows;
  bool header = true;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (header) {
      header = false;
      if (t.rfind("function", 0) == 0) continue;
    }
    const auto f = split(t, ',');
    if (f.size() != 5) throw std::invalid_argument("fixture: expected 5 fields: " + t);
    rows.push_back({trim(f[0]), trim(f[1]), parse_double(trim(f[2])), parse_double(trim(f[3])),
                    parse_double(trim(f[4]))});
  }
  return rows;
}

namespace {

std::string pick_reference(const std::vector<std::string>& algos, const std::string& wanted) {
  if (!wanted.empty()) {
    if (std::find(algos.begin(), algos.end(), wanted) == algos.end())
      throw std::invalid_argument("reference algorithm not present: " + wanted);
    return wanted;
  }
  for (const char* id : {"cqdds", "C-QDDS"})
    if (std::find(algos.begin(), algos.end(), id) != algos.end()) return id;
  return algos.empty() ? std::string() : algos.front();
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

void finish_report(ComparisonReport& rep, const ReportOptions& options) {
  std::sort(rep.functions.begin(), rep.functions.end(), function_less);
  rep.reference = pick_reference(rep.algorithms, options.reference);

  std::set<std::pair<std::string, std::string>> noted;
  for (const auto& g : rep.gaps) noted.insert({g.function, g.algorithm});
  for (const auto& f : rep.functions)
    for (const auto& a : rep.algorithms)
      if (!rep.cells.contains({f, a}) && !noted.contains({f, a}))
        rep.gaps.push_back({f, a, "missing cell"});

  if (rep.algorithms.size() < 2) return;

  for (const auto& f : rep.functions) {
    for (const auto& a : rep.algorithms) {
      if (a == rep.reference) continue;
      Comparison c{f, a, false, {}};
      const auto ref = rep.cells.find({f, rep.reference});
      const auto other = rep.cells.find({f, a});
      if (ref == rep.cells.end() || other == rep.cells.end())
        c.missing = true;
      else
        c.effects = stats::compare(ref->second.summary, other->second.summary);
      rep.comparisons.push_back(c);
    }
  }

  std::vector<std::vector<double>> means, bests, stds;
  for (const auto& f : rep.functions) {
    std::vector<double> m, b, s;
    bool complete = true;
    for (const auto& a : rep.algorithms) {
      const auto it = rep.cells.find({f, a});
      if (it == rep.cells.end()) {
        complete = false;
        break;
      }
      m.push_back(it->second.summary.mean);
      b.push_back(it->second.summary.min);
      s.push_back(it->second.summary.std);
    }
    if (!complete) continue;
    rep.wtl_functions.push_back(f);
    means.push_back(std::move(m));
    bests.push_back(std::move(b));
    stds.push_back(std::move(s));
  }
  const auto dir = stats::Direction::minimize;
  rep.wtl["mean"] = stats::win_tie_loss(means, dir, options.tie_sig_digits);
  rep.wtl["best"] = stats::win_tie_loss(bests, dir, options.tie_sig_digits);
  rep.wtl["std"] = stats::win_tie_loss(stds, dir, options.tie_sig_digits);
  for (const auto& [metric, table] : rep.wtl)
    if (!table.empty()) rep.ranks[metric] = stats::average_ranks(table);
}

}  // namespace

ComparisonReport build_report(const std::vector<TrialRecord>& records,
                              const ReportOptions& options) {
  ComparisonReport rep;
  std::map<std::pair<std::string, std::string>, std::vector<double>> costs;
  for (const auto& r : records) {
    add_unique(rep.algorithms, r.algorithm);
    add_unique(rep.functions, r.function);
    costs[{r.function, r.algorithm}].push_back(r.best_cost);
  }
  for (auto& [key, c] : costs) {
    if (c.size() < 2) {
      rep.gaps.push_back({key.first, key.second, "fewer than two trials"});
      continue;
    }
    PrecisionRow pr{key.first, key.second, stats::precision_curve(c)};
    rep.precision.push_back(pr);
    rep.cells[key] = Cell{stats::summarize(c), std::move(c)};
  }
  finish_report(rep, options);
  return rep;
}

ComparisonReport build_report(const std::vector<FixtureRow>& fixture, std::size_t n,
                              const ReportOptions& options) {
  ComparisonReport rep;
  for (const auto& row : fixture) {
    add_unique(rep.algorithms, row.algorithm);
    add_unique(rep.functions, row.function);
    rep.cells[{row.function, row.algorithm}] = Cell{{row.mean, row.std, row.best, n}, {}};
  }
  finish_report(rep, options);
  return rep;
}

void write_report(const ComparisonReport& rep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto fd = format_double;

  auto summary = open_out(dir / "summary.csv");
  summary << "function,algorithm,n,mean,min,std\n";
  for (const auto& f : rep.functions)
    for (const auto& a : rep.algorithms) {
      const auto it = rep.cells.find({f, a});
      if (it == rep.cells.end()) continue;
      const auto& s = it->second.summary;
      summary << f << ',' << a << ',' << s.n << ',' << fd(s.mean) << ',' << fd(s.min) << ','
              << fd(s.std) << '\n';
    }

  auto ttest = open_out(dir / "ttest.csv");
  auto effects = open_out(dir / "effects.csv");
  ttest << "function,reference,competitor,t,significant,status\n";
  effects << "function,reference,competitor,cohens_d,hedges_g_textbook,hedges_g_papermode,status\n";
  for (const auto& c : rep.comparisons) {
    const std::string status =
        c.missing ? "missing" : (c.effects.degenerate ? "degenerate" : "ok");
    ttest << c.function << ',' << rep.reference << ',' << c.competitor << ',';
    effects << c.function << ',' << rep.reference << ',' << c.competitor << ',';
    if (c.missing) {
      ttest << ",," << status << '\n';
      effects << ",,," << status << '\n';
      continue;
    }
    ttest << fd(c.effects.t_value) << ',' << (c.effects.significant ? 1 : 0) << ',' << status
          << '\n';
    effects << fd(c.effects.cohens_d) << ',' << fd(c.effects.hedges_g_textbook) << ','
            << fd(c.effects.hedges_g_papermode) << ',' << status << '\n';
  }

  auto wtl = open_out(dir / "wtl.csv");
  auto ranks = open_out(dir / "ranks.csv");
  wtl << "metric,algorithm,win,tie,loss\n";
  ranks << "metric,algorithm,win_rank,tie_rank,loss_rank,average_rank\n";
  for (const char* metric : {"mean", "best", "std"}) {
    const auto it = rep.wtl.find(metric);
    if (it == rep.wtl.end() || it->second.empty()) continue;
    const auto& table = it->second;
    std::vector<double> w, t, l;
    for (const auto& e : table) {
      w.push_back(static_cast<double>(e.win));
      t.push_back(static_cast<double>(e.tie));
      l.push_back(static_cast<double>(e.loss));
    }
    const auto rw = stats::dense_ranks(w, true);
    const auto rt = stats::dense_ranks(t, true);
    const auto rl = stats::dense_ranks(l, false);
    const auto& avg = rep.ranks.at(metric);
    for (std::size_t i = 0; i < table.size(); ++i) {
      wtl << metric << ',' << rep.algorithms[i] << ',' << table[i].win << ',' << table[i].tie
          << ',' << table[i].loss << '\n';
      ranks << metric << ',' << rep.algorithms[i] << ',' << rw[i] << ',' << rt[i] << ','
            << rl[i] << ',' << fd(avg[i]) << '\n';
    }
  }

  auto precision = open_out(dir / "precision.csv");
  precision << "function,algorithm,fraction,count\n";
  for (const auto& row : rep.precision)
    for (const auto& p : row.curve)
      precision << row.function << ',' << row.algorithm << ',' << fd(p.fraction) << ','
                << p.count << '\n';

  auto gaps = open_out(dir / "gaps.csv");
  gaps << "function,algorithm,reason\n";
  for (const auto& g : rep.gaps) gaps << g.function << ',' << g.algorithm << ',' << g.reason << '\n';
}

// --- exports ----------------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory) {
  os << "iteration,cost,x1,x2\n";
  for (const auto& p : trajectory)
    os << p.iteration << ',' << format_double(p.cost) << ',' << format_double(p.x1) << ','
       << format_double(p.x2) << '\n';
}

std::string trajectory_file_name(const TrialRecord& record) {
  return "trajectory-" + record.algorithm + "-" + record.function + "-t" +
         std::to_string(record.trial_index) + ".csv";
}

void write_chaos_csv(std::ostream& os, std::uint64_t seed, std::size_t n) {
  const auto weights = sample_sequence(seed, n);
  os << "index,weight\n";
  for (std::size_t i = 0; i < weights.size(); ++i)
    os << i << ',' << format_double(weights[i]) << '\n';
}

// --- config file --------------------------------------------------------------------

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string t = trim(std::string_view(line).substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& tok : split(s, ',')) {
    std::string t = trim(tok);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

void apply_config(const std::map<std::string, std::string>& kv, ExperimentConfig& c) {
  for (const auto& [key, value] : kv) {
    if (key == "algo")
      c.algorithms = split_list(value);
    else if (key == "function")
      c.functions = split_list(value);
    else if (key == "dim")
      c.dim = parse_size(value, key);
    else if (key == "iters")
      c.iterations = parse_size(value, key);
    else if (key == "trials")
      c.trials = parse_size(value, key);
    else if (key == "seed")
      c.master_seed = parse_u64(value, key);
    else if (key == "workers")
      c.workers = parse_size(value, key);
    else if (key == "swarm-mode")
      c.swarm_mode = parse_swarm_mode(value);
    else if (key == "out")
      c.output_dir = value;
    else if (key == "format") {
      if (value == "csv")
        c.format = OutputFormat::csv;
      else if (value == "json")
        c.format = OutputFormat::json;
      else
        throw std::invalid_argument("unknown format: " + value);
    } else
      throw std::invalid_argument("unknown config key: " + key);
  }
}

}  // namespace cqdds::harness
