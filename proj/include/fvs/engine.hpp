#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fvs/bitstring.hpp"
#include "fvs/fitness.hpp"
#include "fvs/gp_tree.hpp"
#include "fvs/hex.hpp"
#include "fvs/properties.hpp"
#include "fvs/random.hpp"
#include "fvs/transforms.hpp"
#include "fvs/tree_operators.hpp"
#include "fvs/variation.hpp"

namespace fvs {

enum class EncodingKind { TT, ANF, GP };

constexpr std::string_view encoding_name(EncodingKind e) noexcept {
  switch (e) {
    case EncodingKind::TT:
      return "TT";
    case EncodingKind::ANF:
      return "ANF";
    case EncodingKind::GP:
      return "GP";
  }
  return "?";
}

inline EncodingKind parse_encoding(std::string_view name) {
  if (name == "TT" || name == "tt") return EncodingKind::TT;
  if (name == "ANF" || name == "anf") return EncodingKind::ANF;
  if (name == "GP" || name == "gp") return EncodingKind::GP;
  throw std::invalid_argument("unknown encoding: " + std::string(name));
}

struct EaConfig {
  static constexpr int kTournamentSize = 3;

  int n = 5;
  EncodingKind encoding = EncodingKind::GP;
  FitnessKind fitness = FitnessKind::F1;
  std::size_t population_size = 500;
  std::uint64_t evaluation_budget = 1'000'000;
  double mutation_probability = 0.5;
  TreeLimits tree_limits{};
  std::uint64_t master_seed = 1;
  std::size_t repetitions = 30;
  // Operator names; empty selects every operator of the encoding.
  std::vector<std::string> crossovers;
  std::vector<std::string> mutations;

  void validate() const {
    if (n < 2 || n > kMaxVariables) {
      throw std::invalid_argument("n must be in [2, " + std::to_string(kMaxVariables) + "]");
    }
    if (population_size < static_cast<std::size_t>(kTournamentSize)) {
      throw std::invalid_argument("population size must be at least 3");
    }
    if (evaluation_budget < population_size) {
      throw std::invalid_argument("evaluation budget must cover the initial population");
    }
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
      throw std::invalid_argument("mutation probability must be in [0, 1]");
    }
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    const auto& d = tree_limits;
    if (d.init.min_depth < 0 || d.init.min_depth > d.init.max_depth || d.init.max_depth > d.max_depth) {
      throw std::invalid_argument("tree depth limits must satisfy 0 <= min <= init max <= max depth");
    }
  }

  friend bool operator==(const EaConfig&, const EaConfig&) = default;
};

/// Best-ever state after an improvement.
struct TracePoint {
  std::uint64_t evaluations = 0;
  double best_fitness = 0.0;
  std::int64_t best_nl = 0;
  bool five_valued = false;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  EaConfig config;
  std::uint64_t seed = 0;
  std::string genotype;  // serialized best-ever genotype
  std::string truth_table_hex;
  SpectrumProfile profile;
  FitnessValue best;
  std::uint64_t evaluations = 0;
  std::vector<TracePoint> trace;  // strictly increasing in both evaluations and fitness

  bool five_valued() const noexcept { return best.balanced() && profile.five_valued(); }

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// TT and ANF genotypes: 2^n bits decoded directly or through the Moebius
/// transform.
class BitstringEncoding {
 public:
  using Genotype = BitstringGenotype;

  BitstringEncoding(int n, BitMode mode) : n_(n), mode_(mode) {}

  Genotype random(Rng& rng) const { return random_bitstring(n_, mode_, rng); }
  TruthTable decode(const Genotype& g) { return fvs::decode(g); }
  std::string serialize(const Genotype& g) const { return fvs::serialize(g); }

 private:
  int n_;
  BitMode mode_;
};

/// Tree genotypes, evaluated bitsliced.
class TreeEncoding {
 public:
  using Genotype = GpTree;

  TreeEncoding(int n, TreeLimits limits) : n_(n), limits_(limits), evaluator_(n) {}

  Genotype random(Rng& rng) const { return random_tree(n_, limits_.init, rng); }
  TruthTable decode(const Genotype& g) { return evaluator_.evaluate(g); }
  std::string serialize(const Genotype& g) const { return g.to_string(); }

 private:
  int n_;
  TreeLimits limits_;
  TreeEvaluator evaluator_;
};

/// Steady-state EA with 3-tournament elimination: each step samples three
/// distinct individuals, removes the worst, and replaces it by a child of
/// the other two (crossover, then mutation with probability p_mut).
/// Evaluations of the initial population count toward the budget.
template <class Encoding>
class SteadyStateEa {
 public:
  using Genotype = typename Encoding::Genotype;

  struct Individual {
    Genotype genotype;
    FitnessValue fitness;
  };

  SteadyStateEa(EaConfig config, Encoding encoding, OperatorSuite<Genotype> suite, std::uint64_t seed)
      : config_(std::move(config)),
        encoding_(std::move(encoding)),
        suite_(std::move(suite)),
        seed_(seed),
        rng_(seed) {
    config_.validate();
    suite_.validate();
  }

  /// Random initial population, fully evaluated.
  void initialize() {
    std::vector<Genotype> genotypes;
    genotypes.reserve(config_.population_size);
    for (std::size_t i = 0; i < config_.population_size; ++i) genotypes.push_back(encoding_.random(rng_));
    seed_population(std::move(genotypes));
  }

  /// Replaces the population with the given genotypes, evaluating each.
  void seed_population(std::vector<Genotype> genotypes) {
    if (genotypes.size() < static_cast<std::size_t>(EaConfig::kTournamentSize)) {
      throw std::invalid_argument("population needs at least 3 individuals");
    }
    population_.clear();
    population_.reserve(genotypes.size());
    for (auto& g : genotypes) {
      auto fitness = evaluate(g);
      population_.push_back(Individual{std::move(g), fitness});
    }
  }

  /// One tournament step; consumes exactly one evaluation.
  void step() {
    const std::size_t size = population_.size();
    std::size_t picks[3];
    picks[0] = rng_.below(size);
    do picks[1] = rng_.below(size); while (picks[1] == picks[0]);
    do picks[2] = rng_.below(size); while (picks[2] == picks[0] || picks[2] == picks[1]);

    double worst_value = population_[picks[0]].fitness.value;
    for (auto p : picks) worst_value = std::min(worst_value, population_[p].fitness.value);
    std::size_t tied[3];
    std::size_t tied_count = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (population_[picks[k]].fitness.value == worst_value) tied[tied_count++] = k;
    }
    const std::size_t loser = tied[tied_count == 1 ? 0 : rng_.below(tied_count)];

    const Individual* parents[2];
    std::size_t next = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != loser) parents[next++] = &population_[picks[k]];
    }
    const bool mutate = rng_.bernoulli(config_.mutation_probability);
    Genotype child = pick_and_apply(suite_, parents[0]->genotype, parents[1]->genotype, mutate, rng_);
    auto fitness = evaluate(child);
    population_[picks[loser]] = Individual{std::move(child), fitness};
  }

  bool exhausted() const noexcept { return evaluations_ >= config_.evaluation_budget; }

  RunResult run() {
    initialize();
    while (!exhausted()) step();
    return result();
  }

  /// Report for the best-ever individual, re-derived from its genotype.
  RunResult result() {
    RunResult r;
    r.config = config_;
    r.seed = seed_;
    r.genotype = encoding_.serialize(best_.genotype);
    const TruthTable tt = encoding_.decode(best_.genotype);
    r.truth_table_hex = to_hex(tt);
    r.profile = classify_spectrum(walsh_transform(tt));
    r.best = best_.fitness;
    r.evaluations = evaluations_;
    r.trace = trace_;
    return r;
  }

  const std::vector<Individual>& population() const noexcept { return population_; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }
  const Individual& best() const noexcept { return best_; }
  const std::vector<TracePoint>& trace() const noexcept { return trace_; }
  const EaConfig& config() const noexcept { return config_; }

 private:
  FitnessValue evaluate(const Genotype& g) {
    const TruthTable tt = encoding_.decode(g);
    walsh_transform_into(tt, spectrum_);
    const FitnessValue fitness = evaluate_fitness(config_.fitness, tt, spectrum_, scratch_);
    ++evaluations_;
    if (trace_.empty() || fitness.value > best_.fitness.value) {
      best_ = Individual{g, fitness};
      const bool five = fitness.balanced() && classify_spectrum(spectrum_).five_valued();
      trace_.push_back(TracePoint{evaluations_, fitness.value, fitness.nonlinearity, five});
    }
    return fitness;
  }

  EaConfig config_;
  Encoding encoding_;
  OperatorSuite<Genotype> suite_;
  std::uint64_t seed_;
  Rng rng_;
  std::vector<Individual> population_;
  std::uint64_t evaluations_ = 0;
  Individual best_{};
  std::vector<TracePoint> trace_;
  WalshSpectrum spectrum_;
  std::vector<std::int32_t> scratch_;
};

/// One complete run of the configured encoding from `seed`.
inline RunResult run(const EaConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.encoding == EncodingKind::GP) {
    SteadyStateEa<TreeEncoding> ea(config, TreeEncoding(config.n, config.tree_limits),
                                   tree_suite(config.n, config.tree_limits, config.crossovers, config.mutations),
                                   seed);
    return ea.run();
  }
  const BitMode mode = config.encoding == EncodingKind::TT ? BitMode::TruthTable : BitMode::Anf;
  SteadyStateEa<BitstringEncoding> ea(config, BitstringEncoding(config.n, mode),
                                      bitstring_suite(config.crossovers, config.mutations), seed);
  return ea.run();
}

struct SummaryStats {
  double avg = 0.0;
  double stdev = 0.0;  // sample standard deviation; 0 for a single value
  double max = 0.0;
  double min = 0.0;

  static SummaryStats of(const std::vector<double>& values) {
    SummaryStats s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.avg = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double sq = 0.0;
      for (double v : values) sq += (v - s.avg) * (v - s.avg);
      s.stdev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    s.max = *std::max_element(values.begin(), values.end());
    s.min = *std::min_element(values.begin(), values.end());
    return s;
  }
};

struct BatchResult {
  std::vector<RunResult> runs;
  SummaryStats fitness;
  SummaryStats nonlinearity;
  std::size_t five_valued_runs = 0;
  std::int64_t best_five_valued_nl = -1;  // -1 when no run is five-valued

  double five_valued_rate() const noexcept {
    return runs.empty() ? 0.0 : static_cast<double>(five_valued_runs) / static_cast<double>(runs.size());
  }
};

inline BatchResult summarize(std::vector<RunResult> runs) {
  BatchResult batch;
  std::vector<double> fitness;
  std::vector<double> nl;
  for (const auto& r : runs) {
    fitness.push_back(r.best.value);
    nl.push_back(static_cast<double>(r.best.nonlinearity));
    if (r.five_valued()) {
      ++batch.five_valued_runs;
      batch.best_five_valued_nl = std::max(batch.best_five_valued_nl, r.best.nonlinearity);
    }
  }
  batch.fitness = SummaryStats::of(fitness);
  batch.nonlinearity = SummaryStats::of(nl);
  batch.runs = std::move(runs);
  return batch;
}

/// config.repetitions independent runs seeded by derive_seed(master_seed, i).
/// Up to `jobs` runs execute concurrently; results keep repetition order.
inline BatchResult run_batch(const EaConfig& config, unsigned jobs = 1) {
  config.validate();
  std::vector<RunResult> runs(config.repetitions);
  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(config.repetitions)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        runs[i] = run(config, derive_seed(config.master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(std::move(runs));
}

}  // namespace fvs
