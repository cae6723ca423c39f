#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fvs/properties.hpp"
#include "fvs/transforms.hpp"
#include "fvs/truth_table.hpp"

namespace fvs {

enum class FitnessKind { F1, F2 };

constexpr std::string_view fitness_name(FitnessKind k) noexcept { return k == FitnessKind::F1 ? "F1" : "F2"; }

inline FitnessKind parse_fitness(std::string_view name) {
  if (name == "F1" || name == "f1" || name == "1") return FitnessKind::F1;
  if (name == "F2" || name == "f2" || name == "2") return FitnessKind::F2;
  throw std::invalid_argument("unknown fitness function: " + std::string(name));
}

/// Score plus the quantities it was computed from. Unused entries stay 0.
struct FitnessValue {
  double value = 0.0;
  std::size_t deficit = 0;         // bits to flip to reach balance
  std::size_t distinct_count = 0;  // #values, signed
  std::int64_t nonlinearity = 0;
  std::size_t max_count = 0;  // #max_values
  std::size_t penalty = 0;    // pen(f)

  bool balanced() const noexcept { return deficit == 0; }

  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
};

namespace detail {

inline void check_pair(const TruthTable& tt, const WalshSpectrum& spec) {
#ifndef NDEBUG
  if (tt.variables() != spec.variables()) throw std::invalid_argument("truth table and spectrum sizes differ");
  const auto dc = static_cast<std::int64_t>(tt.size()) - 2 * static_cast<std::int64_t>(tt.weight());
  if (spec[0] != dc) throw std::invalid_argument("spectrum does not belong to the truth table");
#else
  (void)tt;
  (void)spec;
#endif
}

inline std::size_t count_distinct(std::span<const std::int32_t> coeffs, std::vector<std::int32_t>& scratch) {
  scratch.assign(coeffs.begin(), coeffs.end());
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

inline FitnessValue unbalanced(std::size_t deficit, const WalshSpectrum& spec) {
  FitnessValue f;
  f.deficit = deficit;
  f.value = -static_cast<double>(deficit);
  f.nonlinearity = nonlinearity(spec);
  return f;
}

}  // namespace detail

/// Distinct-value count first, then nonlinearity refined by how rarely the
/// extreme coefficient occurs:
///   unbalanced           -> -deficit
///   #values != 5         -> 1 / (1 + |#values - 5|)
///   #values == 5         -> nl + (2^n - #max_values) / 2^n
inline FitnessValue fitness1(const TruthTable& tt, const WalshSpectrum& spec, std::vector<std::int32_t>& scratch) {
  detail::check_pair(tt, spec);
  const std::size_t deficit = balancedness_deficit(tt);
  if (deficit != 0) return detail::unbalanced(deficit, spec);

  FitnessValue f;
  f.nonlinearity = nonlinearity(spec);
  f.distinct_count = detail::count_distinct(spec.coeffs(), scratch);
  if (f.distinct_count != 5) {
    const auto gap = static_cast<double>(f.distinct_count > 5 ? f.distinct_count - 5 : 5 - f.distinct_count);
    f.value = 1.0 / (1.0 + gap);
    return f;
  }
  const std::int32_t peak = max_abs_coefficient(spec);
  for (auto w : spec.coeffs()) f.max_count += (w == peak || w == -peak) ? 1 : 0;
  const auto size = static_cast<double>(spec.size());
  f.value = static_cast<double>(f.nonlinearity) + (size - static_cast<double>(f.max_count)) / size;
  return f;
}

inline FitnessValue fitness1(const TruthTable& tt, const WalshSpectrum& spec) {
  std::vector<std::int32_t> scratch;
  return fitness1(tt, spec, scratch);
}

/// Magnitudes allowed by pen(f): {0, 2^((n-1)/2), 2^((n+1)/2)} for odd n,
/// {0, 2^(n/2), 2^((n+2)/2)} for even n.
inline std::array<std::int32_t, 2> penalty_magnitudes(int n) noexcept {
  const int low = n % 2 == 1 ? (n - 1) / 2 : n / 2;
  return {std::int32_t{1} << low, std::int32_t{1} << (low + 1)};
}

/// Coefficients outside the allowed five-value set.
inline std::size_t pen(const WalshSpectrum& spec) noexcept {
  const auto [low, high] = penalty_magnitudes(spec.variables());
  std::size_t count = 0;
  for (auto w : spec.coeffs()) {
    const std::int32_t m = w < 0 ? -w : w;
    count += (m != 0 && m != low && m != high) ? 1 : 0;
  }
  return count;
}

/// nl / (1 + pen(f)) for balanced functions, -deficit otherwise.
inline FitnessValue fitness2(const TruthTable& tt, const WalshSpectrum& spec) {
  detail::check_pair(tt, spec);
  const std::size_t deficit = balancedness_deficit(tt);
  if (deficit != 0) return detail::unbalanced(deficit, spec);
  FitnessValue f;
  f.nonlinearity = nonlinearity(spec);
  f.penalty = pen(spec);
  f.value = static_cast<double>(f.nonlinearity) / (1.0 + static_cast<double>(f.penalty));
  return f;
}

inline FitnessValue evaluate_fitness(FitnessKind kind, const TruthTable& tt, const WalshSpectrum& spec,
                                     std::vector<std::int32_t>& scratch) {
  return kind == FitnessKind::F1 ? fitness1(tt, spec, scratch) : fitness2(tt, spec);
}

}  // namespace fvs
