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

#ifndef PDFHC_COMMON_BITS_H_
#define PDFHC_COMMON_BITS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdfhc {

// One bit per element, each element 0 or 1. Bit i is the coefficient of 2^i
// when the vector is read as an integer.
using BitVector = std::vector<std::uint8_t>;

BitVector BitsFromUint(std::uint64_t value, std::size_t width);

// Requires bits.size() <= 64.
std::uint64_t BitsToUint(std::span<const std::uint8_t> bits);

// Big-endian hex of the integer value, ceil(width / 4) digits.
std::string BitsToHex(std::span<const std::uint8_t> bits);

// Inverse of BitsToHex. Throws std::invalid_argument on bad digits or when
// the value does not fit in `width` bits.
BitVector BitsFromHex(std::string_view hex, std::size_t width);

}  // namespace pdfhc

#endif  // PDFHC_COMMON_BITS_H_
