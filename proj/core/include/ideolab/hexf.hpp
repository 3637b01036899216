#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "ideolab/errors.hpp"

namespace ideolab {

// 16-digit big-endian hex of the IEEE-754 bit pattern; round-trips exactly.
inline std::string hex_f64(double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[15 - i] = digits[(bits >> (4 * i)) & 0xF];
  return out;
}

inline double unhex_f64(const std::string& s) {
  if (s.size() != 16) throw IoError("unhex_f64: expected 16 hex digits");
  std::uint64_t bits = 0;
  for (const char c : s) {
    std::uint64_t d;
    if (c >= '0' && c <= '9') d = static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') d = static_cast<std::uint64_t>(c - 'A' + 10);
    else throw IoError("unhex_f64: invalid hex digit");
    bits = (bits << 4) | d;
  }
  return std::bit_cast<double>(bits);
}

}  // namespace ideolab
