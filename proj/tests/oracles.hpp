#pragma once

// Definitional implementations used only to check the fast paths.

#include <bit>
#include <cstdint>
#include <vector>

#include "fvs/gp_tree.hpp"
#include "fvs/hex.hpp"
#include "fvs/random.hpp"
#include "fvs/truth_table.hpp"

namespace fvs::oracle {

/// W_f(a) = sum_x (-1)^(f(x) xor a.x), O(4^n).
inline std::vector<std::int32_t> naive_walsh(const TruthTable& tt) {
  const std::size_t size = tt.size();
  std::vector<std::int32_t> w(size, 0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t x = 0; x < size; ++x) {
      const bool bit = tt[x] ^ ((std::popcount(a & x) & 1) != 0);
      w[a] += bit ? -1 : 1;
    }
  }
  return w;
}

/// g(a) = xor of v(x) over x covered by a, O(4^n).
inline std::vector<std::uint8_t> naive_mobius(const std::vector<std::uint8_t>& v) {
  std::vector<std::uint8_t> g(v.size(), 0);
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t x = 0; x < v.size(); ++x) {
      if ((x & a) == x) g[a] ^= v[x];
    }
  }
  return g;
}

/// Value of x_i at table index x under the x1-most-significant order.
inline bool input_bit(std::size_t x, int i, int n) { return ((x >> (n - i)) & 1U) != 0; }

/// Evaluates the tree on a single assignment by recursion over the prefix
/// sequence.
inline bool eval_at(const GpTree& t, std::size_t& pos, std::size_t x, int n) {
  const Node node = t[pos++];
  switch (node.op) {
    case Op::Var:
      return input_bit(x, node.var, n);
    case Op::Not:
      return !eval_at(t, pos, x, n);
    case Op::If: {
      const bool c = eval_at(t, pos, x, n);
      const bool a = eval_at(t, pos, x, n);
      const bool b = eval_at(t, pos, x, n);
      return c ? a : b;
    }
    default:
      break;
  }
  const bool a = eval_at(t, pos, x, n);
  const bool b = eval_at(t, pos, x, n);
  switch (node.op) {
    case Op::Or:
      return a || b;
    case Op::Xor:
      return a != b;
    case Op::And:
      return a && b;
    case Op::And2:
      return a && !b;
    case Op::Xnor:
      return a == b;
    default:
      return false;
  }
}

inline TruthTable scalar_evaluate(const GpTree& t, int n) {
  return TruthTable::tabulate(n, [&](std::size_t x) {
    std::size_t pos = 0;
    return eval_at(t, pos, x, n);
  });
}

inline TruthTable random_table(int n, Rng& rng) {
  TruthTable t(n);
  for (auto& w : t.words()) w = rng.next();
  t.clear_padding();
  return t;
}

/// Balanced five-valued function for n >= 5: the n=5 function 504daf47
/// (spectrum {0, +-4, +-8}) plus a plateaued function on the remaining
/// variables, composed with a random invertible linear map of the inputs.
inline TruthTable random_five_valued(int n, Rng& rng) {
  const TruthTable g = from_hex("504daf47", 5);
  const int k = n - 5;
  auto h = [k](std::size_t y) {
    bool v = false;
    for (int i = 0; i + 1 < k; i += 2) v ^= ((y >> i) & 1U) && ((y >> (i + 1)) & 1U);
    if (k % 2 == 1) v ^= ((y >> (k - 1)) & 1U) != 0;
    return v;
  };
  std::vector<std::pair<int, int>> moves;
  for (int t = 0; t < 4 * n; ++t) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    moves.emplace_back(i, j >= i ? j + 1 : j);
  }
  return TruthTable::tabulate(n, [&](std::size_t x) {
    for (auto [i, j] : moves) {
      if ((x >> j) & 1U) x ^= std::size_t{1} << i;
    }
    return g[x >> k] != h(x & ((std::size_t{1} << k) - 1));
  });
}

}  // namespace fvs::oracle
