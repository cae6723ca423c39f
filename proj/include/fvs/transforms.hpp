#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvs/truth_table.hpp"

namespace fvs {

/// Walsh-Hadamard coefficients W_f(a) = sum_x (-1)^(f(x) xor a.x), indexed
/// like the truth table.
class WalshSpectrum {
 public:
  WalshSpectrum() = default;

  WalshSpectrum(int n, std::vector<std::int32_t> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    check_variable_count(n);
    if (coeffs_.size() != table_size(n)) {
      throw std::invalid_argument("spectrum length " + std::to_string(coeffs_.size()) +
                                  " does not match 2^" + std::to_string(n));
    }
  }

  int variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::int32_t operator[](std::size_t a) const noexcept { return coeffs_[a]; }
  std::span<const std::int32_t> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;

  friend void walsh_transform_into(const TruthTable& tt, WalshSpectrum& out);

 private:
  int n_ = 0;
  std::vector<std::int32_t> coeffs_;
};

namespace detail {

/// In-place integer Walsh-Hadamard butterfly over a power-of-two length.
inline void fwht_in_place(std::span<std::int32_t> v) noexcept {
  const std::size_t len = v.size();
  for (std::size_t half = 1; half < len; half <<= 1) {
    for (std::size_t block = 0; block < len; block += half << 1) {
      std::int32_t* lo = v.data() + block;
      std::int32_t* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const std::int32_t a = lo[j];
        const std::int32_t b = hi[j];
        lo[j] = a + b;
        hi[j] = a - b;
      }
    }
  }
}

// Word masks selecting the indices whose bit k is clear, for k < 6.
inline constexpr std::uint64_t kLowHalfMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

/// g(a) = xor of v(x) over all x covered by a, on packed words of 2^n bits.
inline void mobius_in_place(std::span<std::uint64_t> words, int n) noexcept {
  const int in_word = n < 6 ? n : 6;
  for (int k = 0; k < in_word; ++k) {
    const unsigned shift = 1U << k;
    for (auto& w : words) w ^= (w & kLowHalfMask[k]) << shift;
  }
  for (std::size_t stride = 1; stride < words.size(); stride <<= 1) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w & stride) words[w] ^= words[w ^ stride];
    }
  }
}

}  // namespace detail

/// Fills `out` with the spectrum of `tt`, reusing its storage.
inline void walsh_transform_into(const TruthTable& tt, std::vector<std::int32_t>& out) {
  const std::size_t size = tt.size();
  out.resize(size);
  const auto words = tt.words();
  for (std::size_t i = 0; i < size; ++i) {
    out[i] = 1 - 2 * static_cast<std::int32_t>((words[i >> 6] >> (i & 63)) & 1U);
  }
  detail::fwht_in_place(out);
}

/// Recomputes `out` as the spectrum of `tt`, reusing its storage.
inline void walsh_transform_into(const TruthTable& tt, WalshSpectrum& out) {
  out.n_ = tt.variables();
  walsh_transform_into(tt, out.coeffs_);
}

/// Fast transform, O(n 2^n).
inline WalshSpectrum walsh_transform(const TruthTable& tt) {
  std::vector<std::int32_t> coeffs;
  walsh_transform_into(tt, coeffs);
  return WalshSpectrum(tt.variables(), std::move(coeffs));
}

/// Binary Moebius transform of a 0/1 vector whose length is a power of two.
/// It is an involution and maps ANF coefficients to truth-table values and
/// back.
inline std::vector<std::uint8_t> mobius_transform(std::span<const std::uint8_t> v) {
  if (v.size() < 2 || !std::has_single_bit(v.size())) {
    throw std::invalid_argument("Moebius transform needs a power-of-two length >= 2, got " +
                                std::to_string(v.size()));
  }
  const int n = std::countr_zero(v.size());
  auto packed = TruthTable::from_bits(n, v);
  detail::mobius_in_place(packed.words(), n);
  return packed.to_bits();
}

inline TruthTable anf_to_truth_table(AnfVector anf) {
  detail::mobius_in_place(anf.words(), anf.variables());
  return TruthTable::retag(std::move(anf));
}

inline AnfVector truth_table_to_anf(TruthTable tt) {
  detail::mobius_in_place(tt.words(), tt.variables());
  return AnfVector::retag(std::move(tt));
}

}  // namespace fvs
