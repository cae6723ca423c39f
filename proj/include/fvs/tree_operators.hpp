#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fvs/gp_tree.hpp"
#include "fvs/random.hpp"

namespace fvs {

/// Depth policy of a tree run: generation range for initial trees and
/// mutation subtrees, and the hard cap on offspring depth.
struct TreeLimits {
  DepthLimits init{2, 5};
  int max_depth = 8;

  friend bool operator==(const TreeLimits&, const TreeLimits&) = default;
};

enum class TreeCrossover { Simple, Uniform, SizeFair, OnePoint, ContextPreserving };

inline constexpr std::array<TreeCrossover, 5> kTreeCrossovers = {
    TreeCrossover::Simple, TreeCrossover::Uniform, TreeCrossover::SizeFair, TreeCrossover::OnePoint,
    TreeCrossover::ContextPreserving};

constexpr std::string_view crossover_name(TreeCrossover v) noexcept {
  switch (v) {
    case TreeCrossover::Simple:
      return "simple";
    case TreeCrossover::Uniform:
      return "uniform";
    case TreeCrossover::SizeFair:
      return "size-fair";
    case TreeCrossover::OnePoint:
      return "one-point";
    case TreeCrossover::ContextPreserving:
      return "context-preserving";
  }
  return "?";
}

inline TreeCrossover parse_tree_crossover(std::string_view name) {
  for (auto v : kTreeCrossovers) {
    if (crossover_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown tree crossover: " + std::string(name));
}

namespace detail {

inline GpTree within_depth_or(GpTree child, const GpTree& fallback, int max_depth) {
  if (child.depth() > max_depth) return fallback;
  return child;
}

/// Node pairs at identical coordinates in both trees. With
/// `same_arity_only`, descent stops where the arities differ, which yields
/// the common region.
inline void collect_aligned(const GpTree& a, std::size_t ia, const GpTree& b, std::size_t ib, bool same_arity_only,
                            std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(ia, ib);
  const int ka = arity(a[ia].op);
  const int kb = arity(b[ib].op);
  if (same_arity_only && ka != kb) return;
  std::size_t ca = ia + 1;
  std::size_t cb = ib + 1;
  for (int c = 0; c < std::min(ka, kb); ++c) {
    collect_aligned(a, ca, b, cb, same_arity_only, out);
    ca = a.subtree_end(ca);
    cb = b.subtree_end(cb);
  }
}

inline void uniform_build(const GpTree& a, std::size_t ia, const GpTree& b, std::size_t ib, Rng& rng,
                          std::vector<Node>& out) {
  const int ka = arity(a[ia].op);
  const int kb = arity(b[ib].op);
  if (ka != kb) {
    // Boundary of the common region: whole subtrees are exchanged.
    const bool take_b = rng.coin();
    const GpTree& src = take_b ? b : a;
    const std::size_t i = take_b ? ib : ia;
    const auto nodes = src.nodes();
    out.insert(out.end(), nodes.begin() + static_cast<std::ptrdiff_t>(i),
               nodes.begin() + static_cast<std::ptrdiff_t>(src.subtree_end(i)));
    return;
  }
  out.push_back(rng.coin() ? b[ib] : a[ia]);
  std::size_t ca = ia + 1;
  std::size_t cb = ib + 1;
  for (int c = 0; c < ka; ++c) {
    uniform_build(a, ca, b, cb, rng, out);
    ca = a.subtree_end(ca);
    cb = b.subtree_end(cb);
  }
}

/// Donor point in b for a removed subtree of `removed` nodes, such that the
/// expected size change is zero whenever both smaller and larger donors
/// exist. Half of the probability goes to equal-sized donors when there are
/// any; the rest is split between the smaller and larger bins in inverse
/// proportion to their mean size distance.
inline std::size_t size_fair_donor(const GpTree& b, std::size_t removed, Rng& rng) {
  std::vector<std::size_t> smaller, equal, larger;
  double smaller_gap = 0.0;
  double larger_gap = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const std::size_t s = b.subtree_end(j) - j;
    if (s < removed) {
      smaller.push_back(j);
      smaller_gap += static_cast<double>(removed - s);
    } else if (s > removed) {
      larger.push_back(j);
      larger_gap += static_cast<double>(s - removed);
    } else {
      equal.push_back(j);
    }
  }
  auto pick = [&](const std::vector<std::size_t>& bin) { return bin[rng.below(bin.size())]; };
  if (smaller.empty() || larger.empty()) {
    if (!equal.empty()) return pick(equal);
    return pick(smaller.empty() ? larger : smaller);
  }
  if (!equal.empty() && rng.coin()) return pick(equal);
  const double mean_smaller = smaller_gap / static_cast<double>(smaller.size());
  const double mean_larger = larger_gap / static_cast<double>(larger.size());
  const double p_smaller = mean_larger / (mean_smaller + mean_larger);
  return rng.unit() < p_smaller ? pick(smaller) : pick(larger);
}

}  // namespace detail

/// Replaces the subtree at `node` by a fresh grow/full subtree whose depth
/// keeps the result within limits.max_depth.
inline GpTree subtree_mutation_at(const GpTree& tree, std::size_t node, int n, const TreeLimits& limits, Rng& rng) {
  const int node_depth = tree.node_depths()[node];
  const int room = std::max(0, std::min(limits.init.max_depth, limits.max_depth - node_depth));
  const GpTree fresh = random_tree(n, DepthLimits{0, room}, rng);
  return detail::within_depth_or(tree.with_subtree(node, fresh), tree, limits.max_depth);
}

inline GpTree subtree_mutation(const GpTree& tree, int n, const TreeLimits& limits, Rng& rng) {
  const std::size_t node = rng.below(tree.size());
  return subtree_mutation_at(tree, node, n, limits, rng);
}

/// a with its subtree at ia replaced by b's subtree at ib; a itself when the
/// result would exceed max_depth.
inline GpTree simple_crossover_at(const GpTree& a, const GpTree& b, std::size_t ia, std::size_t ib, int max_depth) {
  return detail::within_depth_or(a.with_subtree(ia, b.subtree(ib)), a, max_depth);
}

/// One child from parents a and b. Offspring deeper than max_depth are
/// replaced by a copy of a.
inline GpTree tree_crossover(const GpTree& a, const GpTree& b, TreeCrossover variant, int max_depth, Rng& rng) {
  switch (variant) {
    case TreeCrossover::Simple: {
      const std::size_t ia = rng.below(a.size());
      const std::size_t ib = rng.below(b.size());
      return simple_crossover_at(a, b, ia, ib, max_depth);
    }
    case TreeCrossover::Uniform: {
      std::vector<Node> nodes;
      nodes.reserve(std::max(a.size(), b.size()));
      detail::uniform_build(a, 0, b, 0, rng, nodes);
      return detail::within_depth_or(GpTree::from_prefix(std::move(nodes)), a, max_depth);
    }
    case TreeCrossover::SizeFair: {
      const std::size_t ia = rng.below(a.size());
      const std::size_t ib = detail::size_fair_donor(b, a.subtree_end(ia) - ia, rng);
      return simple_crossover_at(a, b, ia, ib, max_depth);
    }
    case TreeCrossover::OnePoint:
    case TreeCrossover::ContextPreserving: {
      std::vector<std::pair<std::size_t, std::size_t>> points;
      detail::collect_aligned(a, 0, b, 0, variant == TreeCrossover::OnePoint, points);
      const auto [ia, ib] = points[rng.below(points.size())];
      return simple_crossover_at(a, b, ia, ib, max_depth);
    }
  }
  throw std::invalid_argument("unknown tree crossover variant");
}

}  // namespace fvs
