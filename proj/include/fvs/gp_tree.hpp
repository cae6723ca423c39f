#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fvs/random.hpp"
#include "fvs/truth_table.hpp"

namespace fvs {

/// Node labels of a symbolic genotype. Var is the terminal; the rest form
/// the function set.
enum class Op : std::uint8_t { Var, Or, Xor, And, And2, Xnor, If, Not };

inline constexpr std::array<Op, 7> kFunctionSet = {Op::Or,   Op::Xor, Op::And, Op::And2,
                                                   Op::Xnor, Op::If,  Op::Not};

constexpr int arity(Op op) noexcept {
  switch (op) {
    case Op::Var:
      return 0;
    case Op::Not:
      return 1;
    case Op::If:
      return 3;
    default:
      return 2;
  }
}

constexpr std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Var:
      return "x";
    case Op::Or:
      return "OR";
    case Op::Xor:
      return "XOR";
    case Op::And:
      return "AND";
    case Op::And2:
      return "AND2";
    case Op::Xnor:
      return "XNOR";
    case Op::If:
      return "IF";
    case Op::Not:
      return "NOT";
  }
  return "?";
}

/// Raised for genotypes that cannot be decoded: bad arity, variable index
/// outside [1, n], unparsable text.
class MalformedGenotype : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Node {
  Op op = Op::Var;
  std::uint8_t var = 1;  // 1-based, meaningful for Op::Var only

  friend bool operator==(const Node&, const Node&) = default;
};

/// Syntax tree stored as its prefix (Polish) node sequence. A subtree is the
/// contiguous range [i, subtree_end(i)). Trees are values: editing
/// operations return a new tree.
class GpTree {
 public:
  GpTree() : nodes_{Node{}} {}

  static GpTree leaf(int var) {
    if (var < 1 || var > kMaxVariables) {
      throw MalformedGenotype("variable index " + std::to_string(var) + " out of range");
    }
    return GpTree(std::vector<Node>{Node{Op::Var, static_cast<std::uint8_t>(var)}});
  }

  static GpTree make(Op op, std::initializer_list<GpTree> children) {
    if (op == Op::Var || static_cast<int>(children.size()) != arity(op)) {
      throw MalformedGenotype(std::string(op_name(op)) + " expects " +
                              std::to_string(arity(op)) + " children");
    }
    std::vector<Node> nodes{Node{op, 0}};
    for (const auto& c : children) nodes.insert(nodes.end(), c.nodes_.begin(), c.nodes_.end());
    return GpTree(std::move(nodes));
  }

  /// Validates that the sequence is exactly one well-formed prefix tree.
  static GpTree from_prefix(std::vector<Node> nodes) {
    std::size_t need = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (need == 0) throw MalformedGenotype("trailing nodes after a complete tree");
      if (nodes[i].op == Op::Var && nodes[i].var < 1) {
        throw MalformedGenotype("variable index must be >= 1");
      }
      need = need - 1 + static_cast<std::size_t>(arity(nodes[i].op));
    }
    if (need != 0 || nodes.empty()) throw MalformedGenotype("incomplete prefix tree");
    return GpTree(std::move(nodes));
  }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& operator[](std::size_t i) const noexcept { return nodes_[i]; }

  std::size_t subtree_end(std::size_t i) const noexcept {
    std::size_t need = 1;
    while (need > 0) {
      need = need - 1 + static_cast<std::size_t>(arity(nodes_[i].op));
      ++i;
    }
    return i;
  }

  GpTree subtree(std::size_t i) const {
    return GpTree(std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(i),
                                    nodes_.begin() + static_cast<std::ptrdiff_t>(subtree_end(i))));
  }

  /// Copy of this tree with the subtree rooted at i replaced.
  GpTree with_subtree(std::size_t i, const GpTree& replacement) const {
    const std::size_t end = subtree_end(i);
    std::vector<Node> out;
    out.reserve(nodes_.size() - (end - i) + replacement.size());
    out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), replacement.nodes_.begin(), replacement.nodes_.end());
    out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    return GpTree(std::move(out));
  }

  /// Depth of every node; the root is at depth 0.
  std::vector<int> node_depths() const {
    std::vector<int> depths(nodes_.size());
    std::vector<int> pending{0};
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const int d = pending.back();
      pending.pop_back();
      depths[i] = d;
      pending.insert(pending.end(), static_cast<std::size_t>(arity(nodes_[i].op)), d + 1);
    }
    return depths;
  }

  /// Edges on the longest root-to-leaf path; a bare leaf has depth 0.
  int depth() const {
    const auto depths = node_depths();
    return *std::max_element(depths.begin(), depths.end());
  }

  int max_variable() const noexcept {
    int m = 0;
    for (const auto& node : nodes_) {
      if (node.op == Op::Var) m = std::max(m, static_cast<int>(node.var));
    }
    return m;
  }

  /// Prefix notation, e.g. XOR(AND(x1,x2),x3).
  std::string to_string() const {
    std::string out;
    std::size_t pos = 0;
    write(out, pos);
    return out;
  }

  static GpTree parse(std::string_view text) {
    std::vector<Node> nodes;
    std::size_t pos = 0;
    parse_into(text, pos, nodes);
    skip_space(text, pos);
    if (pos != text.size()) throw MalformedGenotype("unexpected text after tree at offset " + std::to_string(pos));
    return from_prefix(std::move(nodes));
  }

  friend bool operator==(const GpTree&, const GpTree&) = default;

 private:
  explicit GpTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  void write(std::string& out, std::size_t& pos) const {
    const Node node = nodes_[pos++];
    if (node.op == Op::Var) {
      out += 'x';
      out += std::to_string(node.var);
      return;
    }
    out += op_name(node.op);
    out += '(';
    for (int c = 0; c < arity(node.op); ++c) {
      if (c > 0) out += ',';
      write(out, pos);
    }
    out += ')';
  }

  static void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  static void expect(std::string_view text, std::size_t& pos, char c) {
    skip_space(text, pos);
    if (pos >= text.size() || text[pos] != c) {
      throw MalformedGenotype(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    }
    ++pos;
  }

  static void parse_into(std::string_view text, std::size_t& pos, std::vector<Node>& nodes) {
    skip_space(text, pos);
    std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string_view token = text.substr(start, pos - start);
    if (token.empty()) throw MalformedGenotype("expected a node at offset " + std::to_string(start));

    if (token[0] == 'x' && token.size() > 1 &&
        std::all_of(token.begin() + 1, token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int var = std::stoi(std::string(token.substr(1)));
      if (var < 1 || var > kMaxVariables) {
        throw MalformedGenotype("variable index out of range: " + std::string(token));
      }
      nodes.push_back(Node{Op::Var, static_cast<std::uint8_t>(var)});
      return;
    }
    const auto it = std::find_if(kFunctionSet.begin(), kFunctionSet.end(),
                                 [&](Op op) { return op_name(op) == token; });
    if (it == kFunctionSet.end()) throw MalformedGenotype("unknown operator: " + std::string(token));
    nodes.push_back(Node{*it, 0});
    expect(text, pos, '(');
    for (int c = 0; c < arity(*it); ++c) {
      if (c > 0) expect(text, pos, ',');
      parse_into(text, pos, nodes);
    }
    expect(text, pos, ')');
  }

  std::vector<Node> nodes_;
};

/// Bitsliced tree evaluation: every node produces the whole 2^n-bit column
/// in one pass. Holds projection tables and an operand stack for reuse, so
/// one evaluator should not be shared between threads.
class TreeEvaluator {
 public:
  explicit TreeEvaluator(int n) : n_(n), words_(TruthTable::word_count(n)) {
    check_variable_count(n);
    projections_.resize(static_cast<std::size_t>(n) * words_);
    for (int i = 1; i <= n; ++i) {
      const int bit = n - i;
      std::uint64_t* column = &projections_[static_cast<std::size_t>(i - 1) * words_];
      for (std::size_t w = 0; w < words_; ++w) {
        if (bit < 6) {
          column[w] = ~detail_low_mask(bit);
        } else {
          column[w] = ((w >> (bit - 6)) & 1U) ? ~std::uint64_t{0} : 0;
        }
      }
    }
  }

  int variables() const noexcept { return n_; }

  TruthTable evaluate(const GpTree& tree) {
    TruthTable out(n_);
    evaluate_into(tree, out);
    return out;
  }

  void evaluate_into(const GpTree& tree, TruthTable& out) {
    const auto nodes = tree.nodes();
    std::size_t depth_needed = 0;
    std::size_t sp = 0;
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
      if (it->op == Op::Var) {
        if (it->var < 1 || it->var > n_) {
          throw MalformedGenotype("variable x" + std::to_string(it->var) + " outside 1.." +
                                  std::to_string(n_));
        }
        depth_needed = std::max(depth_needed, ++sp);
      } else {
        sp -= static_cast<std::size_t>(arity(it->op) - 1);
      }
    }
    if (stack_.size() < depth_needed * words_) stack_.resize(depth_needed * words_);

    const std::size_t W = words_;
    sp = 0;
    auto slot = [&](std::size_t k) { return stack_.data() + k * W; };
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
      switch (it->op) {
        case Op::Var: {
          const std::uint64_t* src = &projections_[static_cast<std::size_t>(it->var - 1) * W];
          std::copy(src, src + W, slot(sp));
          ++sp;
          break;
        }
        case Op::Not: {
          std::uint64_t* a = slot(sp - 1);
          for (std::size_t w = 0; w < W; ++w) a[w] = ~a[w];
          break;
        }
        case Op::If: {
          const std::uint64_t* cond = slot(sp - 1);
          const std::uint64_t* then_ = slot(sp - 2);
          std::uint64_t* else_ = slot(sp - 3);
          for (std::size_t w = 0; w < W; ++w) else_[w] = (cond[w] & then_[w]) | (~cond[w] & else_[w]);
          sp -= 2;
          break;
        }
        default: {
          const std::uint64_t* a = slot(sp - 1);
          std::uint64_t* b = slot(sp - 2);
          switch (it->op) {
            case Op::Or:
              for (std::size_t w = 0; w < W; ++w) b[w] = a[w] | b[w];
              break;
            case Op::Xor:
              for (std::size_t w = 0; w < W; ++w) b[w] = a[w] ^ b[w];
              break;
            case Op::And:
              for (std::size_t w = 0; w < W; ++w) b[w] = a[w] & b[w];
              break;
            case Op::And2:
              for (std::size_t w = 0; w < W; ++w) b[w] = a[w] & ~b[w];
              break;
            case Op::Xnor:
              for (std::size_t w = 0; w < W; ++w) b[w] = ~(a[w] ^ b[w]);
              break;
            default:
              break;
          }
          --sp;
          break;
        }
      }
    }
    if (out.variables() != n_) out = TruthTable(n_);
    std::copy(slot(0), slot(0) + W, out.words().begin());
    out.clear_padding();
  }

 private:
  static constexpr std::uint64_t detail_low_mask(int bit) noexcept {
    constexpr std::uint64_t masks[6] = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
    };
    return masks[bit];
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> projections_;
  std::vector<std::uint64_t> stack_;
};

inline TruthTable evaluate_tree(const GpTree& tree, int n) { return TreeEvaluator(n).evaluate(tree); }

/// Depth range for tree generation; a bare leaf has depth 0.
struct DepthLimits {
  int min_depth = 2;
  int max_depth = 5;

  friend bool operator==(const DepthLimits&, const DepthLimits&) = default;
};

namespace detail {

inline void generate_tree(int n, int remaining, bool full, Rng& rng, std::vector<Node>& out) {
  const auto terminals = static_cast<std::uint64_t>(n);
  Op op = Op::Var;
  if (remaining > 0) {
    if (full) {
      op = kFunctionSet[rng.below(kFunctionSet.size())];
    } else {
      const auto pick = rng.below(terminals + kFunctionSet.size());
      if (pick >= terminals) op = kFunctionSet[pick - terminals];
    }
  }
  if (op == Op::Var) {
    out.push_back(Node{Op::Var, static_cast<std::uint8_t>(1 + rng.below(terminals))});
    return;
  }
  out.push_back(Node{op, 0});
  for (int c = 0; c < arity(op); ++c) generate_tree(n, remaining - 1, full, rng, out);
}

}  // namespace detail

/// Ramped half-and-half: target depth uniform in the limits, then full or
/// grow with probability 1/2. Grow draws that come out shallower than
/// min_depth are redrawn.
inline GpTree random_tree(int n, DepthLimits limits, Rng& rng) {
  check_variable_count(n);
  if (limits.min_depth < 0 || limits.min_depth > limits.max_depth) {
    throw std::invalid_argument("depth limits must satisfy 0 <= min <= max");
  }
  for (;;) {
    const auto target = static_cast<int>(rng.between(limits.min_depth, limits.max_depth));
    const bool full = rng.coin();
    std::vector<Node> nodes;
    detail::generate_tree(n, target, full, rng, nodes);
    auto tree = GpTree::from_prefix(std::move(nodes));
    if (full || tree.depth() >= limits.min_depth) return tree;
  }
}

}  // namespace fvs
