#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fvs/hex.hpp"
#include "fvs/random.hpp"
#include "fvs/transforms.hpp"
#include "fvs/truth_table.hpp"

namespace fvs {

/// What the 2^n genotype bits mean: truth-table values or ANF coefficients.
enum class BitMode { TruthTable, Anf };

struct GenotypeBitsTag;
using GenotypeBits = BitTable<GenotypeBitsTag>;

struct BitstringGenotype {
  BitMode mode = BitMode::TruthTable;
  GenotypeBits bits;

  int variables() const noexcept { return bits.variables(); }
  std::size_t size() const noexcept { return bits.size(); }

  friend bool operator==(const BitstringGenotype&, const BitstringGenotype&) = default;
};

inline TruthTable decode(const BitstringGenotype& g) {
  if (g.mode == BitMode::TruthTable) return TruthTable::retag(g.bits);
  return anf_to_truth_table(AnfVector::retag(g.bits));
}

inline BitstringGenotype random_bitstring(int n, BitMode mode, Rng& rng) {
  BitstringGenotype g{mode, GenotypeBits(n)};
  for (auto& w : g.bits.words()) w = rng.next();
  g.bits.clear_padding();
  return g;
}

/// "TT:<hex>" or "ANF:<hex>".
inline std::string serialize(const BitstringGenotype& g) {
  return (g.mode == BitMode::TruthTable ? "TT:" : "ANF:") + to_hex(g.bits);
}

inline BitstringGenotype parse_bitstring(std::string_view text, int n) {
  BitMode mode;
  if (text.starts_with("TT:")) {
    mode = BitMode::TruthTable;
    text.remove_prefix(3);
  } else if (text.starts_with("ANF:")) {
    mode = BitMode::Anf;
    text.remove_prefix(4);
  } else {
    throw std::invalid_argument("bitstring genotype must start with TT: or ANF:");
  }
  return {mode, from_hex<GenotypeBits>(text, n)};
}

}  // namespace fvs
