#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvs/bit_operators.hpp"
#include "fvs/bitstring.hpp"
#include "fvs/gp_tree.hpp"
#include "fvs/random.hpp"
#include "fvs/tree_operators.hpp"

namespace fvs {

/// Crossover and mutation operators available to one encoding. Each
/// invocation draws one operator uniformly from the relevant list.
template <class Genotype>
struct OperatorSuite {
  using Crossover = std::function<Genotype(const Genotype&, const Genotype&, Rng&)>;
  using Mutation = std::function<Genotype(const Genotype&, Rng&)>;

  struct NamedCrossover {
    std::string name;
    Crossover apply;
  };
  struct NamedMutation {
    std::string name;
    Mutation apply;
  };

  std::vector<NamedCrossover> crossovers;
  std::vector<NamedMutation> mutations;

  void validate() const {
    if (crossovers.empty() || mutations.empty()) {
      throw std::invalid_argument("operator suite needs at least one crossover and one mutation");
    }
  }

  std::vector<std::string> crossover_names() const {
    std::vector<std::string> out;
    for (const auto& c : crossovers) out.push_back(c.name);
    return out;
  }

  std::vector<std::string> mutation_names() const {
    std::vector<std::string> out;
    for (const auto& m : mutations) out.push_back(m.name);
    return out;
  }
};

template <class Genotype>
struct Offspring {
  Genotype child;
  std::size_t crossover = 0;
  std::optional<std::size_t> mutation;
};

/// Crossover of (a, b) with a uniformly chosen operator, then, if `mutate`,
/// one uniformly chosen mutation. Reports which operators ran.
template <class Genotype>
Offspring<Genotype> apply_random_operators(const OperatorSuite<Genotype>& suite, const Genotype& a, const Genotype& b,
                                           bool mutate, Rng& rng) {
  Offspring<Genotype> out;
  out.crossover = rng.below(suite.crossovers.size());
  out.child = suite.crossovers[out.crossover].apply(a, b, rng);
  if (mutate) {
    out.mutation = rng.below(suite.mutations.size());
    out.child = suite.mutations[*out.mutation].apply(out.child, rng);
  }
  return out;
}

template <class Genotype>
Genotype pick_and_apply(const OperatorSuite<Genotype>& suite, const Genotype& a, const Genotype& b, bool mutate,
                        Rng& rng) {
  return apply_random_operators(suite, a, b, mutate, rng).child;
}

inline const std::vector<std::string> kBitstringCrossoverNames = {"one-point", "uniform"};
inline const std::vector<std::string> kBitstringMutationNames = {"bit-flip", "shuffle"};
inline const std::vector<std::string> kTreeCrossoverNames = {"simple", "uniform", "size-fair", "one-point",
                                                             "context-preserving"};
inline const std::vector<std::string> kTreeMutationNames = {"subtree"};

/// Suite for TT and ANF genotypes; empty name lists select every operator.
inline OperatorSuite<BitstringGenotype> bitstring_suite(std::vector<std::string> crossovers = {},
                                                        std::vector<std::string> mutations = {}) {
  if (crossovers.empty()) crossovers = kBitstringCrossoverNames;
  if (mutations.empty()) mutations = kBitstringMutationNames;
  OperatorSuite<BitstringGenotype> suite;
  for (const auto& name : crossovers) {
    if (name == "one-point") {
      suite.crossovers.push_back({name, [](const auto& a, const auto& b, Rng& r) { return one_point_crossover(a, b, r); }});
    } else if (name == "uniform") {
      suite.crossovers.push_back({name, [](const auto& a, const auto& b, Rng& r) { return uniform_crossover(a, b, r); }});
    } else {
      throw std::invalid_argument("unknown bitstring crossover: " + name);
    }
  }
  for (const auto& name : mutations) {
    if (name == "bit-flip") {
      suite.mutations.push_back({name, [](const auto& g, Rng& r) { return bit_flip_mutation(g, r); }});
    } else if (name == "shuffle") {
      suite.mutations.push_back({name, [](const auto& g, Rng& r) { return shuffle_mutation(g, r); }});
    } else {
      throw std::invalid_argument("unknown bitstring mutation: " + name);
    }
  }
  suite.validate();
  return suite;
}

/// Suite for tree genotypes over n variables; empty name lists select every
/// operator.
inline OperatorSuite<GpTree> tree_suite(int n, TreeLimits limits, std::vector<std::string> crossovers = {},
                                        std::vector<std::string> mutations = {}) {
  if (crossovers.empty()) crossovers = kTreeCrossoverNames;
  if (mutations.empty()) mutations = kTreeMutationNames;
  OperatorSuite<GpTree> suite;
  for (const auto& name : crossovers) {
    const TreeCrossover variant = parse_tree_crossover(name);
    suite.crossovers.push_back({name, [variant, limits](const GpTree& a, const GpTree& b, Rng& r) {
                                  return tree_crossover(a, b, variant, limits.max_depth, r);
                                }});
  }
  for (const auto& name : mutations) {
    if (name != "subtree") throw std::invalid_argument("unknown tree mutation: " + name);
    suite.mutations.push_back(
        {name, [n, limits](const GpTree& t, Rng& r) { return subtree_mutation(t, n, limits, r); }});
  }
  suite.validate();
  return suite;
}

}  // namespace fvs
