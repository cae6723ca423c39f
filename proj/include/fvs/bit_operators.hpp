#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "fvs/bitstring.hpp"
#include "fvs/random.hpp"

namespace fvs {

inline BitstringGenotype bit_flip_at(BitstringGenotype g, std::size_t position) {
  g.bits.flip(position);
  return g;
}

/// Inverts one uniformly chosen bit.
inline BitstringGenotype bit_flip_mutation(BitstringGenotype g, Rng& rng) {
  const std::size_t position = rng.below(g.size());
  return bit_flip_at(std::move(g), position);
}

/// Uniform permutation of the bits in [first, last].
inline BitstringGenotype shuffle_range(BitstringGenotype g, std::size_t first, std::size_t last, Rng& rng) {
  for (std::size_t i = last; i > first; --i) {
    const std::size_t j = first + rng.below(i - first + 1);
    const bool bi = g.bits[i];
    g.bits.set(i, g.bits[j]);
    g.bits.set(j, bi);
  }
  return g;
}

/// Shuffles the substring between two uniform positions.
inline BitstringGenotype shuffle_mutation(BitstringGenotype g, Rng& rng) {
  std::size_t first = rng.below(g.size());
  std::size_t last = rng.below(g.size());
  if (first > last) std::swap(first, last);
  return shuffle_range(std::move(g), first, last, rng);
}

inline void check_same_shape(const BitstringGenotype& a, const BitstringGenotype& b) {
  if (a.variables() != b.variables() || a.mode != b.mode) {
    throw std::invalid_argument("crossover parents differ in length or mode");
  }
}

/// a[0..k) followed by b[k..2^n).
inline BitstringGenotype one_point_crossover_at(const BitstringGenotype& a, const BitstringGenotype& b,
                                                std::size_t k) {
  check_same_shape(a, b);
  BitstringGenotype child = a;
  auto out = child.bits.words();
  const auto bw = b.bits.words();
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::size_t lo = w * 64;
    if (lo + 64 <= k) continue;
    if (lo >= k) {
      out[w] = bw[w];
    } else {
      const std::uint64_t keep = (std::uint64_t{1} << (k - lo)) - 1;
      out[w] = (out[w] & keep) | (bw[w] & ~keep);
    }
  }
  child.bits.clear_padding();
  return child;
}

/// Breakpoint k uniform in [1, 2^n - 1].
inline BitstringGenotype one_point_crossover(const BitstringGenotype& a, const BitstringGenotype& b, Rng& rng) {
  check_same_shape(a, b);
  return one_point_crossover_at(a, b, 1 + rng.below(a.size() - 1));
}

/// Every child bit copied from either parent with probability 1/2.
inline BitstringGenotype uniform_crossover(const BitstringGenotype& a, const BitstringGenotype& b, Rng& rng) {
  check_same_shape(a, b);
  BitstringGenotype child = a;
  auto out = child.bits.words();
  const auto bw = b.bits.words();
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::uint64_t from_a = rng.next();
    out[w] = (out[w] & from_a) | (bw[w] & ~from_a);
  }
  child.bits.clear_padding();
  return child;
}

}  // namespace fvs
