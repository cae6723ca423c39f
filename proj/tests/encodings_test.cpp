#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "fvs/bitstring.hpp"
#include "fvs/gp_tree.hpp"
#include "fvs/hex.hpp"
#include "oracles.hpp"

namespace fvs {
namespace {

GenotypeBits bits_of(int n, std::vector<std::uint8_t> v) { return GenotypeBits::from_bits(n, v); }

TEST(Decode, TruthTableModeIsVerbatim) {
  const BitstringGenotype g{BitMode::TruthTable, bits_of(2, {0, 1, 1, 0})};
  EXPECT_EQ(decode(g).to_bits(), (std::vector<std::uint8_t>{0, 1, 1, 0}));
}

TEST(Decode, AnfModeAppliesMobius) {
  const BitstringGenotype one{BitMode::Anf, bits_of(2, {1, 0, 0, 0})};
  EXPECT_EQ(decode(one).to_bits(), (std::vector<std::uint8_t>{1, 1, 1, 1}));
  const BitstringGenotype zero{BitMode::Anf, GenotypeBits(5)};
  EXPECT_EQ(decode(zero), TruthTable(5));
}

TEST(Decode, AnfRoundTrip) {
  Rng rng(21);
  for (int n = 1; n <= 10; ++n) {
    const auto g = random_bitstring(n, BitMode::Anf, rng);
    const TruthTable tt = decode(g);
    ASSERT_EQ(tt.size(), g.size());
    EXPECT_EQ(truth_table_to_anf(tt), AnfVector::retag(g.bits));
  }
}

TEST(RandomBitstring, IsDeterministicAndSized) {
  Rng a(5);
  Rng b(5);
  EXPECT_EQ(random_bitstring(7, BitMode::TruthTable, a), random_bitstring(7, BitMode::TruthTable, b));
  Rng c(6);
  const auto tiny = random_bitstring(1, BitMode::TruthTable, c);
  EXPECT_EQ(tiny.size(), 2U);
  EXPECT_EQ(tiny.bits.words()[0] >> 2, 0U);
}

TEST(RandomBitstring, WeightIsCentred) {
  Rng rng(7);
  double total = 0.0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) total += static_cast<double>(random_bitstring(8, BitMode::TruthTable, rng).bits.weight());
  // Mean 128, per-draw sd 8, so the mean of 2000 draws has sd ~0.18.
  EXPECT_NEAR(total / draws, 128.0, 1.0);
}

TEST(BitstringSerialization, RoundTrips) {
  Rng rng(8);
  for (auto mode : {BitMode::TruthTable, BitMode::Anf}) {
    const auto g = random_bitstring(6, mode, rng);
    EXPECT_EQ(parse_bitstring(serialize(g), 6), g);
  }
  EXPECT_THROW(parse_bitstring("XX:00", 3), std::invalid_argument);
}

GpTree x(int i) { return GpTree::leaf(i); }

TEST(EvaluateTree, Projection) {
  EXPECT_EQ(evaluate_tree(x(1), 2).to_bits(), (std::vector<std::uint8_t>{0, 0, 1, 1}));
  EXPECT_EQ(evaluate_tree(x(2), 2).to_bits(), (std::vector<std::uint8_t>{0, 1, 0, 1}));
}

TEST(EvaluateTree, Xor) {
  EXPECT_EQ(evaluate_tree(GpTree::make(Op::Xor, {x(1), x(2)}), 2).to_bits(), (std::vector<std::uint8_t>{0, 1, 1, 0}));
}

TEST(EvaluateTree, IfSelectsSecondOrThird) {
  // (x1 and x2) or (not x1 and x3), enumerated over (x1,x2,x3) = 000..111.
  const std::vector<std::uint8_t> expected{0, 1, 0, 1, 0, 0, 1, 1};
  EXPECT_EQ(evaluate_tree(GpTree::make(Op::If, {x(1), x(2), x(3)}), 3).to_bits(), expected);
}

TEST(EvaluateTree, OperatorIdentities) {
  const auto and2 = evaluate_tree(GpTree::make(Op::And2, {x(1), x(2)}), 2);
  const auto and_not = evaluate_tree(GpTree::make(Op::And, {x(1), GpTree::make(Op::Not, {x(2)})}), 2);
  EXPECT_EQ(and2, and_not);
  EXPECT_EQ(and2.to_bits(), (std::vector<std::uint8_t>{0, 0, 1, 0}));

  const auto xnor = evaluate_tree(GpTree::make(Op::Xnor, {x(1), x(2)}), 2);
  const auto not_xor = evaluate_tree(GpTree::make(Op::Not, {GpTree::make(Op::Xor, {x(1), x(2)})}), 2);
  EXPECT_EQ(xnor, not_xor);
  EXPECT_EQ(xnor.to_bits(), (std::vector<std::uint8_t>{1, 0, 0, 1}));

  EXPECT_EQ(evaluate_tree(GpTree::make(Op::Or, {x(1), x(2)}), 2).to_bits(), (std::vector<std::uint8_t>{0, 1, 1, 1}));
  EXPECT_EQ(evaluate_tree(GpTree::make(Op::And, {x(1), x(2)}), 2).to_bits(), (std::vector<std::uint8_t>{0, 0, 0, 1}));
}

TEST(EvaluateTree, PaddingStaysClear) {
  const auto t = evaluate_tree(GpTree::make(Op::Not, {x(1)}), 3);
  EXPECT_EQ(t.words()[0], 0x0FU);
}

TEST(EvaluateTree, RejectsOutOfRangeLeaf) {
  EXPECT_THROW(evaluate_tree(GpTree::make(Op::Or, {x(1), x(4)}), 3), MalformedGenotype);
}

TEST(EvaluateTree, BitslicedMatchesScalar) {
  Rng rng(31);
  for (int n = 1; n <= 8; ++n) {
    TreeEvaluator evaluator(n);
    for (int t = 0; t < 200; ++t) {
      const auto tree = random_tree(n, {0, 6}, rng);
      ASSERT_EQ(evaluator.evaluate(tree), oracle::scalar_evaluate(tree, n)) << tree.to_string();
    }
  }
}

TEST(GpTree, StructureQueries) {
  const auto t = GpTree::make(Op::Xor, {GpTree::make(Op::And, {x(1), x(2)}), x(3)});
  EXPECT_EQ(t.size(), 5U);
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.subtree_end(1), 4U);
  EXPECT_EQ(t.subtree(1).to_string(), "AND(x1,x2)");
  EXPECT_EQ(t.with_subtree(4, GpTree::make(Op::Not, {x(2)})).to_string(), "XOR(AND(x1,x2),NOT(x2))");
  EXPECT_EQ(t.node_depths(), (std::vector<int>{0, 1, 2, 2, 1}));
  EXPECT_EQ(t.max_variable(), 3);
  EXPECT_EQ(x(4).depth(), 0);
}

TEST(GpTree, PrefixNotationRoundTrip) {
  const std::string text = "XOR(AND(x1,x2),x3)";
  EXPECT_EQ(GpTree::parse(text).to_string(), text);
  EXPECT_EQ(GpTree::parse(" IF( x1 , NOT(x2), AND2(x3,x12) ) ").to_string(), "IF(x1,NOT(x2),AND2(x3,x12))");
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_tree(9, {0, 6}, rng);
    ASSERT_EQ(GpTree::parse(t.to_string()), t);
  }
}

TEST(GpTree, ParseRejectsMalformedText) {
  EXPECT_THROW(GpTree::parse("XOR(x1)"), MalformedGenotype);
  EXPECT_THROW(GpTree::parse("FOO(x1,x2)"), MalformedGenotype);
  EXPECT_THROW(GpTree::parse("x0"), MalformedGenotype);
  EXPECT_THROW(GpTree::parse("x1 x2"), MalformedGenotype);
  EXPECT_THROW(GpTree::parse("AND(x1,x2"), MalformedGenotype);
  EXPECT_THROW(GpTree::make(Op::Not, {x(1), x(2)}), MalformedGenotype);
  EXPECT_THROW(GpTree::from_prefix({Node{Op::And, 0}, Node{Op::Var, 1}}), MalformedGenotype);
}

TEST(RandomTree, BareLeafForZeroDepth) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_tree(4, {0, 0}, rng);
    EXPECT_EQ(t.size(), 1U);
    EXPECT_EQ(t[0].op, Op::Var);
  }
}

TEST(RandomTree, Deterministic) {
  Rng a(99);
  Rng b(99);
  EXPECT_EQ(random_tree(6, {2, 5}, a), random_tree(6, {2, 5}, b));
}

TEST(RandomTree, DepthsStayWithinLimitsAndInvariantsHold) {
  Rng rng(3);
  std::vector<int> seen(6, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tree(8, {2, 5}, rng);
    const int d = t.depth();
    ASSERT_GE(d, 2);
    ASSERT_LE(d, 5);
    ++seen[static_cast<std::size_t>(d)];
    ASSERT_LE(t.max_variable(), 8);
    ASSERT_NO_THROW(GpTree::from_prefix(std::vector<Node>(t.nodes().begin(), t.nodes().end())));
  }
  for (int d = 2; d <= 5; ++d) EXPECT_GT(seen[static_cast<std::size_t>(d)], 0) << d;
}

TEST(RandomTree, RejectsInvertedLimits) {
  Rng rng(1);
  EXPECT_THROW(random_tree(4, {3, 2}, rng), std::invalid_argument);
}

}  // namespace
}  // namespace fvs
