// Copyright 2026 The pdfhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdfhc/common/bits.h"

#include <stdexcept>

namespace pdfhc {

BitVector BitsFromUint(std::uint64_t value, std::size_t width) {
  BitVector bits(width, 0);
  for (std::size_t i = 0; i < width && i < 64; ++i) bits[i] = (value >> i) & 1;
  return bits;
}

std::uint64_t BitsToUint(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw std::invalid_argument("bit vector wider than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) v |= static_cast<std::uint64_t>(bits[i] & 1) << i;
  return v;
}

std::string BitsToHex(std::span<const std::uint8_t> bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (bits.size() + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      if (i < bits.size()) nibble |= (bits[i] & 1) << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

BitVector BitsFromHex(std::string_view hex, std::size_t width) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("empty hex bit string");
  BitVector bits(width, 0);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char ch = hex[hex.size() - 1 - d];
    int nibble;
    if (ch >= '0' && ch <= '9') nibble = ch - '0';
    else if (ch >= 'a' && ch <= 'f') nibble = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') nibble = ch - 'A' + 10;
    else throw std::invalid_argument(std::string("invalid hex digit '") + ch + "'");
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      const int bit = (nibble >> b) & 1;
      if (i < width) {
        bits[i] = static_cast<std::uint8_t>(bit);
      } else if (bit) {
        throw std::invalid_argument("hex value " + std::string(hex) + " does not fit in " +
                                    std::to_string(width) + " bits");
      }
    }
  }
  return bits;
}

}  // namespace pdfhc
