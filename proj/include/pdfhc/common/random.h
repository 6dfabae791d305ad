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

#ifndef PDFHC_COMMON_RANDOM_H_
#define PDFHC_COMMON_RANDOM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pdfhc {

// 256-bit seed material. Every randomized component in the library is keyed by
// one of these so that runs are reproducible byte for byte.
using Seed = std::array<std::uint8_t, 32>;

// Parses exactly 64 hex digits. Throws std::invalid_argument otherwise.
Seed SeedFromHex(std::string_view hex);
std::string SeedToHex(const Seed& seed);

// Expands a small integer into a seed (test and CLI convenience).
Seed SeedFromU64(std::uint64_t value);

// Domain-separated child seed: BLAKE2b(key = parent, msg = label || index).
Seed DeriveSeed(const Seed& parent, std::string_view label,
                std::uint64_t index = 0);

// Deterministic cryptographically strong generator: the ChaCha20 keystream
// under `seed` with a zero nonce. Satisfies UniformRandomBitGenerator.
class SecureRng {
 public:
  using result_type = std::uint64_t;

  explicit SecureRng(const Seed& seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  void Fill(std::span<std::uint8_t> out);
  std::uint8_t NextByte();

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t Uniform(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

  // Moves the stream to an absolute byte offset.
  void SeekByte(std::uint64_t offset);
  std::uint64_t byte_position() const { return block_ * kBlockBytes + pos_ - kBlockBytes; }

 private:
  static constexpr std::size_t kBlockBytes = 64;
  void Refill();

  Seed key_;
  std::uint64_t block_ = 0;  // index of the next block to generate
  std::array<std::uint8_t, kBlockBytes> buf_{};
  std::size_t pos_ = kBlockBytes;
};

// Fisher-Yates with SecureRng::Uniform, so the permutation does not depend on
// the standard library's distribution implementation.
template <typename T>
void Shuffle(std::span<T> items, SecureRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng.Uniform(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace pdfhc

#endif  // PDFHC_COMMON_RANDOM_H_
