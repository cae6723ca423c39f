#include <gtest/gtest.h>

#include <vector>

#include "fvs/engine.hpp"
#include "fvs/experiment.hpp"

namespace fvs {
namespace {

EaConfig small_config(EncodingKind encoding, int n = 5) {
  EaConfig c;
  c.n = n;
  c.encoding = encoding;
  c.population_size = 50;
  c.evaluation_budget = 5000;
  c.repetitions = 3;
  return c;
}

SteadyStateEa<TreeEncoding> tree_ea(const EaConfig& c, std::uint64_t seed) {
  return SteadyStateEa<TreeEncoding>(c, TreeEncoding(c.n, c.tree_limits), tree_suite(c.n, c.tree_limits), seed);
}

TEST(EaConfig, Validation) {
  EaConfig c;
  EXPECT_NO_THROW(c.validate());
  c.population_size = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = EaConfig{};
  c.evaluation_budget = 10;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = EaConfig{};
  c.mutation_probability = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = EaConfig{};
  c.tree_limits.max_depth = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = EaConfig{};
  c.repetitions = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(EaConfig, PublishedDefaults) {
  const EaConfig c;
  EXPECT_EQ(c.evaluation_budget, 1'000'000U);
  EXPECT_EQ(c.mutation_probability, 0.5);
  EXPECT_EQ(EaConfig::kTournamentSize, 3);
  EXPECT_EQ(c.repetitions, 30U);
}

TEST(SstStep, KeepsSizeAndConsumesOneEvaluation) {
  const auto c = small_config(EncodingKind::GP);
  auto ea = tree_ea(c, 1);
  ea.initialize();
  EXPECT_EQ(ea.evaluations(), c.population_size);
  for (int i = 0; i < 100; ++i) {
    const auto before = ea.evaluations();
    ea.step();
    ASSERT_EQ(ea.evaluations(), before + 1);
    ASSERT_EQ(ea.population().size(), c.population_size);
  }
}

TEST(SstStep, ClonesStayClonesWithoutMutation) {
  auto c = small_config(EncodingKind::GP);
  c.mutation_probability = 0.0;
  auto ea = tree_ea(c, 2);
  // Subtree crossovers between identical multi-node parents can change the
  // shape, so only a single leaf is guaranteed to stay fixed.
  const auto tree = GpTree::leaf(3);
  ea.seed_population({tree, tree, tree});
  for (int i = 0; i < 20; ++i) ea.step();
  for (const auto& ind : ea.population()) EXPECT_EQ(ind.genotype, tree);
}

TEST(SstStep, ReplacesTheWorstOfThree) {
  // Two good clones and one clearly worse individual; with no mutation the
  // worse one is always eliminated and replaced by a clone.
  auto c = small_config(EncodingKind::TT);
  c.mutation_probability = 0.0;
  SteadyStateEa<BitstringEncoding> ea(c, BitstringEncoding(5, BitMode::TruthTable), bitstring_suite(), 3);
  const auto good = parse_bitstring("TT:504daf47", 5);
  const auto bad = parse_bitstring("TT:00000000", 5);
  ea.seed_population({good, bad, good});
  ea.step();
  for (const auto& ind : ea.population()) EXPECT_EQ(ind.genotype, good);
}

TEST(Run, BudgetEqualToPopulationReturnsBestInitial) {
  auto c = small_config(EncodingKind::GP);
  c.evaluation_budget = c.population_size;
  auto ea = tree_ea(c, 4);
  const auto r = ea.run();
  EXPECT_EQ(r.evaluations, c.population_size);
  double best = -1e300;
  for (const auto& ind : ea.population()) best = std::max(best, ind.fitness.value);
  EXPECT_EQ(r.best.value, best);
}

TEST(Run, ExactBudgetAndMonotoneTrace) {
  for (auto e : {EncodingKind::TT, EncodingKind::ANF, EncodingKind::GP}) {
    for (auto f : {FitnessKind::F1, FitnessKind::F2}) {
      auto c = small_config(e, 6);
      c.fitness = f;
      const auto r = run(c, 5);
      EXPECT_EQ(r.evaluations, c.evaluation_budget);
      ASSERT_FALSE(r.trace.empty());
      EXPECT_EQ(r.trace.front().evaluations, 1U);
      for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_GT(r.trace[i].evaluations, r.trace[i - 1].evaluations);
        EXPECT_GT(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
      }
      EXPECT_EQ(r.trace.back().best_fitness, r.best.value);
      EXPECT_EQ(r.trace.back().best_nl, r.best.nonlinearity);
    }
  }
}

TEST(Run, ResultIsRederivableFromGenotype) {
  for (auto e : {EncodingKind::TT, EncodingKind::ANF, EncodingKind::GP}) {
    const auto c = small_config(e);
    const auto r = run(c, 6);
    const TruthTable tt =
        e == EncodingKind::GP ? evaluate_tree(GpTree::parse(r.genotype), c.n) : decode(parse_bitstring(r.genotype, c.n));
    EXPECT_EQ(to_hex(tt), r.truth_table_hex);
    const auto spec = walsh_transform(tt);
    EXPECT_EQ(classify_spectrum(spec), r.profile);
    const auto fit = c.fitness == FitnessKind::F1 ? fitness1(tt, spec) : fitness2(tt, spec);
    EXPECT_EQ(fit, r.best);
  }
}

TEST(Run, SameSeedSameResult) {
  for (auto e : {EncodingKind::TT, EncodingKind::GP}) {
    const auto c = small_config(e);
    const auto a = run(c, 77);
    const auto b = run(c, 77);
    EXPECT_EQ(a, b);
    EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
    EXPECT_NE(nlohmann::json(a).dump(), nlohmann::json(run(c, 78)).dump());
  }
}

TEST(Run, SmallGpRunFindsFiveValuedFunction) {
  EaConfig c;
  c.n = 5;
  c.evaluation_budget = 100'000;
  const auto r = run(c, 1);
  EXPECT_TRUE(r.five_valued());
  EXPECT_EQ(r.best.nonlinearity, 12);
  EXPECT_EQ(r.best.value, 12.625);
}

TEST(RunBatch, SingleRepetition) {
  auto c = small_config(EncodingKind::GP);
  c.repetitions = 1;
  const auto batch = run_batch(c);
  ASSERT_EQ(batch.runs.size(), 1U);
  EXPECT_EQ(batch.fitness.avg, batch.runs[0].best.value);
  EXPECT_EQ(batch.fitness.max, batch.runs[0].best.value);
  EXPECT_EQ(batch.fitness.stdev, 0.0);
}

TEST(RunBatch, SummaryMatchesRunsAndSeedsAreDerived) {
  const auto c = small_config(EncodingKind::TT);
  const auto batch = run_batch(c);
  ASSERT_EQ(batch.runs.size(), c.repetitions);
  double max = -1e300;
  for (std::size_t i = 0; i < batch.runs.size(); ++i) {
    EXPECT_EQ(batch.runs[i].seed, derive_seed(c.master_seed, i));
    max = std::max(max, batch.runs[i].best.value);
  }
  EXPECT_EQ(batch.fitness.max, max);
}

TEST(RunBatch, ParallelMatchesSequential) {
  const auto c = small_config(EncodingKind::GP);
  const auto seq = run_batch(c, 1);
  const auto par = run_batch(c, 3);
  ASSERT_EQ(seq.runs.size(), par.runs.size());
  for (std::size_t i = 0; i < seq.runs.size(); ++i) EXPECT_EQ(seq.runs[i], par.runs[i]);
}

TEST(SummaryStats, SampleStandardDeviation) {
  const auto s = SummaryStats::of({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.avg, 2.5);
  EXPECT_DOUBLE_EQ(s.stdev, std::sqrt(5.0 / 3.0));
  EXPECT_EQ(s.max, 4.0);
  EXPECT_EQ(s.min, 1.0);
}

TEST(Seeds, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

}  // namespace
}  // namespace fvs
