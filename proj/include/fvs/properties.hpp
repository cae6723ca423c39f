#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvs/transforms.hpp"
#include "fvs/truth_table.hpp"

namespace fvs {

inline std::int32_t max_abs_coefficient(const WalshSpectrum& spec) noexcept {
  std::int32_t m = 0;
  for (auto w : spec.coeffs()) m = std::max(m, w < 0 ? -w : w);
  return m;
}

/// nl = 2^(n-1) - max|W|/2.
inline std::int64_t nonlinearity(const WalshSpectrum& spec) noexcept {
  return (std::int64_t{1} << (spec.variables() - 1)) - max_abs_coefficient(spec) / 2;
}

/// Number of output bits to change to reach weight 2^(n-1).
inline std::size_t balancedness_deficit(const TruthTable& tt) noexcept {
  const std::size_t w = tt.weight();
  const std::size_t half = tt.size() / 2;
  return w > half ? w - half : half - w;
}

inline bool is_balanced(const TruthTable& tt) noexcept { return balancedness_deficit(tt) == 0; }

/// Largest weight of a monomial with nonzero coefficient; 0 for the zero
/// function.
inline int algebraic_degree(const AnfVector& anf) noexcept {
  int degree = 0;
  const auto words = anf.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const auto a = (w << 6) | static_cast<std::size_t>(std::countr_zero(bits));
      degree = std::max(degree, std::popcount(a));
      bits &= bits - 1;
    }
  }
  return degree;
}

inline constexpr int kBruteForceMaxVariables = 12;

/// Minimum Hamming distance from f to every affine function a.x xor b,
/// enumerated literally. Verification oracle only.
inline std::int64_t brute_force_nonlinearity(const TruthTable& tt) {
  const int n = tt.variables();
  if (n > kBruteForceMaxVariables) {
    throw std::invalid_argument("brute-force nonlinearity is limited to n <= " +
                                std::to_string(kBruteForceMaxVariables));
  }
  const std::size_t size = tt.size();
  std::int64_t best = static_cast<std::int64_t>(size);
  for (std::size_t a = 0; a < size; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      std::int64_t distance = 0;
      for (std::size_t x = 0; x < size; ++x) {
        const bool affine = ((std::popcount(a & x) & 1) ^ b) != 0;
        distance += affine != tt[x];
      }
      best = std::min(best, distance);
    }
  }
  return best;
}

enum class SpectrumKind { Bent, Plateaued, FiveValued, Other };

/// Shape of the value set of a spectrum.
///
/// Plateaued carries its amplitude exponent in lambda1. FiveValued carries
/// lambda1 < lambda2 such that the values are {0, +-2^lambda1, +-2^lambda2}.
/// The exponents are reported as found; no range is imposed on them.
struct SpectrumProfile {
  SpectrumKind kind = SpectrumKind::Other;
  int lambda1 = 0;
  int lambda2 = 0;
  std::vector<std::int32_t> distinct_values;

  std::size_t distinct_count() const noexcept { return distinct_values.size(); }
  bool five_valued() const noexcept { return kind == SpectrumKind::FiveValued; }

  std::string to_string() const {
    switch (kind) {
      case SpectrumKind::Bent:
        return "Bent";
      case SpectrumKind::Plateaued:
        return "Plateaued(" + std::to_string(lambda1) + ")";
      case SpectrumKind::FiveValued:
        return "FiveValued(" + std::to_string(lambda1) + "," + std::to_string(lambda2) + ")";
      case SpectrumKind::Other:
        break;
    }
    return "Other(" + std::to_string(distinct_count()) + ")";
  }

  friend bool operator==(const SpectrumProfile&, const SpectrumProfile&) = default;
};

/// Sorted distinct signed coefficient values.
inline std::vector<std::int32_t> distinct_values(const WalshSpectrum& spec) {
  std::vector<std::int32_t> v(spec.coeffs().begin(), spec.coeffs().end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline SpectrumProfile classify_spectrum(const WalshSpectrum& spec) {
  SpectrumProfile profile;
  profile.distinct_values = distinct_values(spec);
  const auto& values = profile.distinct_values;
  const int n = spec.variables();

  // Magnitudes of the nonzero values; classification needs them to be powers
  // of two and symmetric according to the kind.
  std::vector<std::int32_t> magnitudes;
  bool has_zero = false;
  for (auto v : values) {
    if (v == 0) {
      has_zero = true;
      continue;
    }
    magnitudes.push_back(std::abs(v));
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  magnitudes.erase(std::unique(magnitudes.begin(), magnitudes.end()), magnitudes.end());
  const auto is_power = [](std::int32_t m) { return std::has_single_bit(static_cast<std::uint32_t>(m)); };
  const auto exponent = [](std::int32_t m) { return std::countr_zero(static_cast<std::uint32_t>(m)); };

  if (magnitudes.size() == 1 && is_power(magnitudes[0])) {
    const int lambda = exponent(magnitudes[0]);
    if (!has_zero && n % 2 == 0 && lambda == n / 2) {
      profile.kind = SpectrumKind::Bent;
    } else {
      profile.kind = SpectrumKind::Plateaued;
      profile.lambda1 = lambda;
    }
    return profile;
  }
  if (values.size() == 5 && has_zero && magnitudes.size() == 2 && is_power(magnitudes[0]) &&
      is_power(magnitudes[1])) {
    profile.kind = SpectrumKind::FiveValued;
    profile.lambda1 = exponent(magnitudes[0]);
    profile.lambda2 = exponent(magnitudes[1]);
    return profile;
  }
  profile.kind = SpectrumKind::Other;
  return profile;
}

}  // namespace fvs
