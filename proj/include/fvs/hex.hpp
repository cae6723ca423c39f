#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fvs/truth_table.hpp"

namespace fvs {

/// Hex wire format of a bit table. Reading the string left to right as
/// binary gives f(0), f(1), ..., f(2^n - 1); each nibble holds four
/// consecutive values with the lowest index in its most significant bit.
/// Requires n >= 2.
template <class Tag>
std::string to_hex(const BitTable<Tag>& t) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (t.variables() < 2) throw std::invalid_argument("hex format needs n >= 2");
  std::string out(t.size() / 4, '0');
  for (std::size_t c = 0; c < out.size(); ++c) {
    unsigned nibble = 0;
    for (std::size_t k = 0; k < 4; ++k) nibble = (nibble << 1) | (t[c * 4 + k] ? 1U : 0U);
    out[c] = kDigits[nibble];
  }
  return out;
}

template <class Table = TruthTable>
Table from_hex(std::string_view hex, int n) {
  if (n < 2) throw std::invalid_argument("hex format needs n >= 2");
  Table t(n);
  if (hex.size() != t.size() / 4) {
    throw std::invalid_argument("hex string has " + std::to_string(hex.size()) +
                                " digits, expected " + std::to_string(t.size() / 4) + " for n=" +
                                std::to_string(n));
  }
  for (std::size_t c = 0; c < hex.size(); ++c) {
    const char ch = hex[c];
    unsigned nibble = 0;
    if (ch >= '0' && ch <= '9') {
      nibble = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = static_cast<unsigned>(ch - 'a' + 10);
    } else if (ch >= 'A' && ch <= 'F') {
      nibble = static_cast<unsigned>(ch - 'A' + 10);
    } else {
      throw std::invalid_argument(std::string("invalid hex digit '") + ch + "' at position " +
                                  std::to_string(c));
    }
    for (std::size_t k = 0; k < 4; ++k) t.set(c * 4 + k, (nibble >> (3 - k)) & 1U);
  }
  return t;
}

}  // namespace fvs
