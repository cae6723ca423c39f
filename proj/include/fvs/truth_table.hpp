#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvs {

inline constexpr int kMaxVariables = 20;

/// Input vector x = (x1..xn) lives at index sum(x_i * 2^(n-i)), so x1 is the
/// most significant index bit. Every bit-vector type in the library uses
/// this order.
inline constexpr std::size_t table_size(int n) noexcept { return std::size_t{1} << n; }

inline void check_variable_count(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw std::invalid_argument("variable count must be in [1, " + std::to_string(kMaxVariables) +
                                "], got " + std::to_string(n));
  }
}

/// Packed vector of 2^n bits, 64 per word; index i lives in word i/64 at
/// bit i%64. When 2^n < 64 the unused high bits of the single word are zero.
///
/// The tag gives truth tables, ANF coefficient vectors and bitstring
/// genotypes distinct types over the same storage.
template <class Tag>
class BitTable {
 public:
  BitTable() = default;

  explicit BitTable(int n) : n_(n) {
    check_variable_count(n);
    words_.assign(word_count(n), 0);
  }

  /// From one 0/1 value per index. Any nonzero byte is rejected.
  static BitTable from_bits(int n, std::span<const std::uint8_t> bits) {
    BitTable t(n);
    if (bits.size() != t.size()) {
      throw std::invalid_argument("expected " + std::to_string(t.size()) + " bits, got " +
                                  std::to_string(bits.size()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] > 1) throw std::invalid_argument("bit values must be 0 or 1");
      t.set(i, bits[i] != 0);
    }
    return t;
  }

  /// Tabulates pred(x) for every index x.
  template <class Pred>
  static BitTable tabulate(int n, Pred&& pred) {
    BitTable t(n);
    for (std::size_t x = 0; x < t.size(); ++x) t.set(x, static_cast<bool>(pred(x)));
    return t;
  }

  /// Reinterprets the bits of another tagged table.
  template <class OtherTag>
  static BitTable retag(BitTable<OtherTag> other) {
    BitTable t;
    t.n_ = other.variables();
    t.words_ = std::move(other).release_words();
    return t;
  }

  static constexpr std::size_t word_count(int n) noexcept {
    return n >= 6 ? (std::size_t{1} << (n - 6)) : 1;
  }

  int variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_size(n_); }

  bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool get(std::size_t i) const noexcept { return (*this)[i]; }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// Mask of the meaningful bits of each word.
  std::uint64_t word_mask() const noexcept {
    return n_ >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
  }

  /// Clears bits past 2^n. Call after word-level writes that may set them.
  void clear_padding() noexcept {
    if (n_ < 6 && !words_.empty()) words_[0] &= word_mask();
  }

  std::vector<std::uint8_t> to_bits() const {
    std::vector<std::uint8_t> bits(size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = get(i) ? 1 : 0;
    return bits;
  }

  std::vector<std::uint64_t> release_words() && { return std::move(words_); }

  friend bool operator==(const BitTable&, const BitTable&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct TruthTableTag;
struct AnfTag;

/// Output values f(x) of an n-variable Boolean function.
using TruthTable = BitTable<TruthTableTag>;

/// Algebraic normal form coefficients h(a).
using AnfVector = BitTable<AnfTag>;

}  // namespace fvs
