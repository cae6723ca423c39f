#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "fvs/engine.hpp"
#include "fvs/fitness.hpp"
#include "fvs/hex.hpp"
#include "fvs/properties.hpp"
#include "fvs/transforms.hpp"

namespace fvs {

// ---------------------------------------------------------------------------
// JSON mapping of engine types

inline void to_json(nlohmann::json& j, const TreeLimits& t) {
  j = {{"init_min_depth", t.init.min_depth}, {"init_max_depth", t.init.max_depth}, {"max_depth", t.max_depth}};
}

inline void from_json(const nlohmann::json& j, TreeLimits& t) {
  t.init.min_depth = j.at("init_min_depth").get<int>();
  t.init.max_depth = j.at("init_max_depth").get<int>();
  t.max_depth = j.at("max_depth").get<int>();
}

inline void to_json(nlohmann::json& j, const EaConfig& c) {
  j = {{"n", c.n},
       {"encoding", encoding_name(c.encoding)},
       {"fitness", fitness_name(c.fitness)},
       {"population_size", c.population_size},
       {"evaluation_budget", c.evaluation_budget},
       {"mutation_probability", c.mutation_probability},
       {"tournament_size", EaConfig::kTournamentSize},
       {"tree_limits", c.tree_limits},
       {"master_seed", c.master_seed},
       {"repetitions", c.repetitions},
       {"crossovers", c.crossovers},
       {"mutations", c.mutations}};
}

inline void from_json(const nlohmann::json& j, EaConfig& c) {
  c.n = j.at("n").get<int>();
  c.encoding = parse_encoding(j.at("encoding").get<std::string>());
  c.fitness = parse_fitness(j.at("fitness").get<std::string>());
  c.population_size = j.at("population_size").get<std::size_t>();
  c.evaluation_budget = j.at("evaluation_budget").get<std::uint64_t>();
  c.mutation_probability = j.at("mutation_probability").get<double>();
  c.tree_limits = j.at("tree_limits").get<TreeLimits>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.repetitions = j.at("repetitions").get<std::size_t>();
  c.crossovers = j.at("crossovers").get<std::vector<std::string>>();
  c.mutations = j.at("mutations").get<std::vector<std::string>>();
}

inline void to_json(nlohmann::json& j, const FitnessValue& f) {
  j = {{"value", f.value},          {"deficit", f.deficit}, {"distinct_count", f.distinct_count},
       {"nonlinearity", f.nonlinearity}, {"max_count", f.max_count}, {"penalty", f.penalty}};
}

inline void from_json(const nlohmann::json& j, FitnessValue& f) {
  f.value = j.at("value").get<double>();
  f.deficit = j.at("deficit").get<std::size_t>();
  f.distinct_count = j.at("distinct_count").get<std::size_t>();
  f.nonlinearity = j.at("nonlinearity").get<std::int64_t>();
  f.max_count = j.at("max_count").get<std::size_t>();
  f.penalty = j.at("penalty").get<std::size_t>();
}

inline void to_json(nlohmann::json& j, const SpectrumProfile& p) {
  j = {{"kind", p.to_string()}, {"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"distinct_values", p.distinct_values}};
}

inline void from_json(const nlohmann::json& j, SpectrumProfile& p) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Bent") {
    p.kind = SpectrumKind::Bent;
  } else if (kind.starts_with("Plateaued")) {
    p.kind = SpectrumKind::Plateaued;
  } else if (kind.starts_with("FiveValued")) {
    p.kind = SpectrumKind::FiveValued;
  } else {
    p.kind = SpectrumKind::Other;
  }
  p.lambda1 = j.at("lambda1").get<int>();
  p.lambda2 = j.at("lambda2").get<int>();
  p.distinct_values = j.at("distinct_values").get<std::vector<std::int32_t>>();
}

inline void to_json(nlohmann::json& j, const TracePoint& t) {
  j = nlohmann::json::array({t.evaluations, t.best_fitness, t.best_nl, t.five_valued});
}

inline void from_json(const nlohmann::json& j, TracePoint& t) {
  t.evaluations = j.at(0).get<std::uint64_t>();
  t.best_fitness = j.at(1).get<double>();
  t.best_nl = j.at(2).get<std::int64_t>();
  t.five_valued = j.at(3).get<bool>();
}

inline void to_json(nlohmann::json& j, const RunResult& r) {
  j = {{"config", r.config},
       {"seed", r.seed},
       {"genotype", r.genotype},
       {"truth_table", r.truth_table_hex},
       {"profile", r.profile},
       {"best", r.best},
       {"five_valued", r.five_valued()},
       {"evaluations", r.evaluations},
       {"trace", r.trace}};
}

inline void from_json(const nlohmann::json& j, RunResult& r) {
  r.config = j.at("config").get<EaConfig>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.genotype = j.at("genotype").get<std::string>();
  r.truth_table_hex = j.at("truth_table").get<std::string>();
  r.profile = j.at("profile").get<SpectrumProfile>();
  r.best = j.at("best").get<FitnessValue>();
  r.evaluations = j.at("evaluations").get<std::uint64_t>();
  r.trace = j.at("trace").get<std::vector<TracePoint>>();
}

inline void to_json(nlohmann::json& j, const SummaryStats& s) {
  j = {{"avg", s.avg}, {"stdev", s.stdev}, {"max", s.max}, {"min", s.min}};
}

/// Parameters with no published value; every artifact lists them so that
/// readers know which numbers are local defaults.
inline const std::vector<std::string> kUnpublishedParameters = {
    "population_size", "tree_limits", "operator_selection_weights", "initialization_method"};

// ---------------------------------------------------------------------------
// Text helpers

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Convergence traces

inline constexpr std::uint64_t kDefaultCheckpointInterval = 10'000;

/// Trace rows for the CSV log: every improvement, plus the best-so-far state
/// at each multiple of `interval` and at the final evaluation.
inline std::vector<TracePoint> sample_trace(const RunResult& r, std::uint64_t interval) {
  std::vector<TracePoint> rows;
  if (r.trace.empty()) return rows;
  std::size_t next = 0;
  TracePoint current = r.trace.front();
  auto advance_to = [&](std::uint64_t evals) {
    while (next < r.trace.size() && r.trace[next].evaluations <= evals) {
      current = r.trace[next];
      rows.push_back(current);
      ++next;
    }
  };
  std::vector<std::uint64_t> checkpoints;
  if (interval > 0) {
    for (std::uint64_t c = interval; c < r.evaluations; c += interval) checkpoints.push_back(c);
  }
  checkpoints.push_back(r.evaluations);
  for (auto c : checkpoints) {
    advance_to(c);
    if (rows.empty() || rows.back().evaluations != c) {
      TracePoint p = current;
      p.evaluations = c;
      rows.push_back(p);
    }
  }
  return rows;
}

inline constexpr std::string_view kTraceHeader = "evaluations,best_fitness,best_nl,five_valued";

inline void write_trace_csv(std::ostream& os, const RunResult& r, std::uint64_t interval) {
  os << "# config: " << nlohmann::json(r.config).dump() << "\n";
  os << "# seed: " << r.seed << "\n";
  os << "# unpublished_parameters: " << nlohmann::json(kUnpublishedParameters).dump() << "\n";
  os << kTraceHeader << "\n";
  for (const auto& p : sample_trace(r, interval)) {
    os << p.evaluations << ',' << format_double(p.best_fitness) << ',' << p.best_nl << ','
       << (p.five_valued ? 1 : 0) << "\n";
  }
}

/// Data rows of a trace CSV. Throws std::runtime_error on malformed input.
inline std::vector<TracePoint> read_trace_csv(std::istream& is) {
  std::vector<TracePoint> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kTraceHeader) throw std::runtime_error("unexpected trace header: " + line);
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string cell[4];
    for (auto& c : cell) {
      if (!std::getline(fields, c, ',')) throw std::runtime_error("short trace row: " + line);
    }
    TracePoint p;
    try {
      p.evaluations = std::stoull(cell[0]);
      p.best_fitness = std::stod(cell[1]);
      p.best_nl = std::stoll(cell[2]);
      p.five_valued = cell[3] == "1";
    } catch (const std::exception&) {
      throw std::runtime_error("bad trace row: " + line);
    }
    rows.push_back(p);
  }
  if (!header_seen) throw std::runtime_error("trace has no header");
  return rows;
}

// ---------------------------------------------------------------------------
// Experiment grid

struct ExperimentSpec {
  static constexpr int kMinSize = 5;
  static constexpr int kMaxSize = 16;

  std::vector<int> sizes;
  std::vector<EncodingKind> encodings;
  std::vector<FitnessKind> fitnesses;
  EaConfig base;  // n, encoding and fitness are overridden per cell
  std::filesystem::path out_dir = "results";
  unsigned jobs = 1;
  std::uint64_t checkpoint_interval = kDefaultCheckpointInterval;

  void validate() const {
    if (sizes.empty() || encodings.empty() || fitnesses.empty()) {
      throw std::invalid_argument("experiment grid is empty");
    }
    for (int n : sizes) {
      if (n < kMinSize || n > kMaxSize) {
        throw std::invalid_argument("n=" + std::to_string(n) + " outside the supported range [" +
                                    std::to_string(kMinSize) + ", " + std::to_string(kMaxSize) + "]");
      }
    }
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    for (const auto& cfg : cells()) cfg.validate();
  }

  std::vector<EaConfig> cells() const {
    std::vector<EaConfig> out;
    for (int n : sizes) {
      for (auto e : encodings) {
        for (auto f : fitnesses) {
          EaConfig c = base;
          c.n = n;
          c.encoding = e;
          c.fitness = f;
          out.push_back(c);
        }
      }
    }
    return out;
  }
};

inline std::string cell_name(const EaConfig& c) {
  return "n" + std::to_string(c.n) + "_" + std::string(encoding_name(c.encoding)) + "_" +
         std::string(fitness_name(c.fitness));
}

inline std::string trace_file_name(std::size_t run) {
  std::ostringstream os;
  os << "run_" << std::setw(3) << std::setfill('0') << run << ".csv";
  return os.str();
}

inline nlohmann::json summary_json(const EaConfig& config, const BatchResult& batch) {
  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t i = 0; i < batch.runs.size(); ++i) {
    nlohmann::json r = batch.runs[i];
    r["trace_file"] = trace_file_name(i);
    runs.push_back(std::move(r));
  }
  return {{"cell", cell_name(config)},
          {"config", config},
          {"unpublished_parameters", kUnpublishedParameters},
          {"summary",
           {{"fitness", batch.fitness},
            {"nonlinearity", batch.nonlinearity},
            {"five_valued_runs", batch.five_valued_runs},
            {"five_valued_rate", batch.five_valued_rate()},
            {"best_five_valued_nl", batch.best_five_valued_nl}}},
          {"runs", runs}};
}

inline constexpr std::string_view kResultsHeader = "size,encoding,fitness,avg,stdev,max,best_nl,five_valued_rate";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + p.string());
  return os;
}

inline void finish(std::ofstream& os, const std::filesystem::path& p) {
  os.flush();
  if (!os) throw IoError("failed writing " + p.string());
}

}  // namespace detail

/// Runs every grid cell and writes, under spec.out_dir:
///   <cell>/run_NNN.csv   convergence trace of each repetition
///   <cell>/summary.json  config echo, summary statistics, every RunResult
///   results.csv          one aggregate row per cell
/// Returns 0 on success, 2 for an invalid configuration, 3 for I/O failures;
/// diagnostics go to `err`.
inline int run_experiment(const ExperimentSpec& spec, std::ostream& log, std::ostream& err) {
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
  namespace fs = std::filesystem;
  try {
    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec || !fs::is_directory(spec.out_dir)) throw IoError("cannot create " + spec.out_dir.string());

    std::ostringstream table;
    table << "# base_config: " << nlohmann::json(spec.base).dump() << "\n";
    table << "# unpublished_parameters: " << nlohmann::json(kUnpublishedParameters).dump() << "\n";
    table << kResultsHeader << "\n";
    for (const auto& config : spec.cells()) {
      const std::string name = cell_name(config);
      log << name << ": " << config.repetitions << " runs x " << config.evaluation_budget << " evaluations\n";
      const BatchResult batch = run_batch(config, spec.jobs);

      const fs::path dir = spec.out_dir / name;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string());
      for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const fs::path p = dir / trace_file_name(i);
        auto os = detail::open_for_write(p);
        write_trace_csv(os, batch.runs[i], spec.checkpoint_interval);
        detail::finish(os, p);
      }
      {
        const fs::path p = dir / "summary.json";
        auto os = detail::open_for_write(p);
        os << summary_json(config, batch).dump(2) << "\n";
        detail::finish(os, p);
      }
      table << config.n << ',' << encoding_name(config.encoding) << ',' << fitness_name(config.fitness) << ','
            << format_double(batch.fitness.avg) << ',' << format_double(batch.fitness.stdev) << ','
            << format_double(batch.fitness.max) << ',' << batch.best_five_valued_nl << ','
            << format_double(batch.five_valued_rate()) << "\n";
      log << "  avg " << batch.fitness.avg << "  stdev " << batch.fitness.stdev << "  max " << batch.fitness.max
          << "  five-valued " << batch.five_valued_runs << "/" << batch.runs.size() << "\n";
    }
    const fs::path p = spec.out_dir / "results.csv";
    auto os = detail::open_for_write(p);
    os << table.str();
    detail::finish(os, p);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Plot data export

/// Reads every <cell>/summary.json under results_dir and writes, into
/// out_dir:
///   violin_<cell>.csv       run,seed,final_fitness,best_nl,five_valued
///   convergence_<cell>.csv  evaluations,mean_best_fitness,min_best_fitness,max_best_fitness
/// Returns 0 on success; otherwise lists the offending files on `err` and
/// returns nonzero.
inline int export_plot_data(const std::filesystem::path& results_dir, const std::filesystem::path& out_dir,
                            std::ostream& log, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(results_dir)) {
    err << "not a results directory: " << results_dir.string() << "\n";
    return 2;
  }
  std::vector<fs::path> cells;
  for (const auto& entry : fs::directory_iterator(results_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "summary.json")) cells.push_back(entry.path());
  }
  std::sort(cells.begin(), cells.end());
  if (cells.empty()) {
    err << "no <cell>/summary.json found under " << results_dir.string() << "\n";
    return 2;
  }

  struct CellData {
    std::string name;
    std::vector<RunResult> runs;
    std::vector<std::vector<TracePoint>> traces;
  };
  std::vector<CellData> data;
  std::vector<std::string> bad;
  for (const auto& dir : cells) {
    const fs::path summary_path = dir / "summary.json";
    CellData cell;
    nlohmann::json summary;
    try {
      std::ifstream is(summary_path);
      summary = nlohmann::json::parse(is);
      cell.name = summary.at("cell").get<std::string>();
      for (const auto& r : summary.at("runs")) cell.runs.push_back(r.get<RunResult>());
    } catch (const std::exception& e) {
      bad.push_back(summary_path.string() + ": " + e.what());
      continue;
    }
    bool ok = true;
    for (const auto& r : summary.at("runs")) {
      const fs::path trace_path = dir / r.value("trace_file", std::string{});
      try {
        std::ifstream is(trace_path);
        if (!is) throw std::runtime_error("missing");
        auto rows = read_trace_csv(is);
        if (rows.empty()) throw std::runtime_error("no data rows");
        cell.traces.push_back(std::move(rows));
      } catch (const std::exception& e) {
        bad.push_back(trace_path.string() + ": " + e.what());
        ok = false;
      }
    }
    if (ok) data.push_back(std::move(cell));
  }
  if (!bad.empty()) {
    err << "corrupt or missing result files:\n";
    for (const auto& b : bad) err << "  " << b << "\n";
    return 3;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  try {
    for (const auto& cell : data) {
      {
        const fs::path p = out_dir / ("violin_" + cell.name + ".csv");
        auto os = detail::open_for_write(p);
        os << "run,seed,final_fitness,best_nl,five_valued\n";
        for (std::size_t i = 0; i < cell.runs.size(); ++i) {
          const auto& r = cell.runs[i];
          os << i << ',' << r.seed << ',' << format_double(r.best.value) << ',' << r.best.nonlinearity << ','
             << (r.five_valued() ? 1 : 0) << "\n";
        }
        detail::finish(os, p);
      }
      // Mean of the per-run best-so-far step functions, sampled at every
      // evaluation count that appears in any trace.
      std::vector<std::uint64_t> grid;
      for (const auto& t : cell.traces) {
        for (const auto& p : t) grid.push_back(p.evaluations);
      }
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      const fs::path p = out_dir / ("convergence_" + cell.name + ".csv");
      auto os = detail::open_for_write(p);
      os << "evaluations,mean_best_fitness,min_best_fitness,max_best_fitness\n";
      std::vector<std::size_t> cursor(cell.traces.size(), 0);
      for (auto evals : grid) {
        double sum = 0.0;
        double lo = 0.0;
        double hi = 0.0;
        std::size_t count = 0;
        for (std::size_t k = 0; k < cell.traces.size(); ++k) {
          const auto& t = cell.traces[k];
          while (cursor[k] + 1 < t.size() && t[cursor[k] + 1].evaluations <= evals) ++cursor[k];
          if (t[cursor[k]].evaluations > evals) continue;
          const double v = t[cursor[k]].best_fitness;
          lo = count == 0 ? v : std::min(lo, v);
          hi = count == 0 ? v : std::max(hi, v);
          sum += v;
          ++count;
        }
        if (count == 0) continue;
        os << evals << ',' << format_double(sum / static_cast<double>(count)) << ',' << format_double(lo) << ','
           << format_double(hi) << "\n";
      }
      detail::finish(os, p);
      log << cell.name << ": " << cell.runs.size() << " runs exported\n";
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Standalone analysis

struct AnalysisReport {
  int n = 0;
  std::size_t weight = 0;
  std::size_t deficit = 0;
  std::int64_t nonlinearity = 0;
  int degree = 0;
  SpectrumProfile profile;
  FitnessValue fitness1;
  FitnessValue fitness2;

  bool balanced() const noexcept { return deficit == 0; }
};

inline AnalysisReport analyze(const TruthTable& tt) {
  const WalshSpectrum spec = walsh_transform(tt);
  AnalysisReport r;
  r.n = tt.variables();
  r.weight = tt.weight();
  r.deficit = balancedness_deficit(tt);
  r.nonlinearity = nonlinearity(spec);
  r.degree = algebraic_degree(truth_table_to_anf(tt));
  r.profile = classify_spectrum(spec);
  r.fitness1 = fitness1(tt, spec);
  r.fitness2 = fitness2(tt, spec);
  return r;
}

/// Throws std::invalid_argument for a malformed hex string.
inline AnalysisReport analyze(std::string_view hex, int n) { return analyze(from_hex(hex, n)); }

inline void print_report(std::ostream& os, const AnalysisReport& r) {
  os << "variables:       " << r.n << "\n";
  os << "weight:          " << r.weight << "\n";
  os << "balanced:        " << (r.balanced() ? "yes" : "no") << "\n";
  os << "deficit:         " << r.deficit << "\n";
  os << "nonlinearity:    " << r.nonlinearity << "\n";
  os << "degree:          " << r.degree << "\n";
  os << "distinct values:";
  for (auto v : r.profile.distinct_values) os << ' ' << v;
  os << "\n";
  os << "profile:         " << r.profile.to_string() << "\n";
  os << "fitness1:        " << format_double(r.fitness1.value) << "\n";
  os << "fitness2:        " << format_double(r.fitness2.value) << "\n";
}

inline nlohmann::json report_json(const AnalysisReport& r) {
  return {{"n", r.n},
          {"weight", r.weight},
          {"balanced", r.balanced()},
          {"deficit", r.deficit},
          {"nonlinearity", r.nonlinearity},
          {"degree", r.degree},
          {"profile", r.profile},
          {"fitness1", r.fitness1},
          {"fitness2", r.fitness2}};
}

}  // namespace fvs
