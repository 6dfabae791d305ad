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

#include "pdfhc/common/random.h"

#include <sodium.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace pdfhc {
namespace {

void EnsureSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
  });
}

int HexDigit(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

Seed SeedFromHex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.size() != 64) {
    throw std::invalid_argument("seed must be 64 hex digits, got " +
                                std::to_string(hex.size()));
  }
  Seed seed{};
  for (std::size_t i = 0; i < seed.size(); ++i) {
    const int hi = HexDigit(hex[2 * i]);
    const int lo = HexDigit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("seed contains a non-hex digit");
    seed[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return seed;
}

std::string SeedToHex(const Seed& seed) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t byte : seed) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 15]);
  }
  return out;
}

Seed SeedFromU64(std::uint64_t value) {
  Seed seed{};
  for (int i = 0; i < 8; ++i) seed[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return seed;
}

Seed DeriveSeed(const Seed& parent, std::string_view label, std::uint64_t index) {
  EnsureSodium();
  crypto_generichash_state state;
  crypto_generichash_init(&state, parent.data(), parent.size(), 32);
  crypto_generichash_update(&state, reinterpret_cast<const unsigned char*>(label.data()),
                            label.size());
  std::uint8_t idx[8];
  for (int i = 0; i < 8; ++i) idx[i] = static_cast<std::uint8_t>(index >> (8 * i));
  crypto_generichash_update(&state, idx, sizeof idx);
  Seed out{};
  crypto_generichash_final(&state, out.data(), out.size());
  return out;
}

SecureRng::SecureRng(const Seed& seed) : key_(seed) { EnsureSodium(); }

void SecureRng::Refill() {
  static constexpr std::uint8_t kNonce[crypto_stream_chacha20_NONCEBYTES] = {};
  buf_.fill(0);
  crypto_stream_chacha20_xor_ic(buf_.data(), buf_.data(), buf_.size(), kNonce, block_,
                                key_.data());
  ++block_;
  pos_ = 0;
}

std::uint8_t SecureRng::NextByte() {
  if (pos_ == kBlockBytes) Refill();
  return buf_[pos_++];
}

void SecureRng::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == kBlockBytes) Refill();
    const std::size_t take = std::min(kBlockBytes - pos_, out.size() - done);
    std::memcpy(out.data() + done, buf_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

SecureRng::result_type SecureRng::operator()() {
  std::uint8_t bytes[8];
  Fill(bytes);
  result_type v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<result_type>(bytes[i]) << (8 * i);
  return v;
}

std::uint64_t SecureRng::Uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform bound must be positive");
  // Largest multiple of bound that fits; values above it are rejected.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v > limit);
  return v % bound;
}

double SecureRng::Uniform01() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

void SecureRng::SeekByte(std::uint64_t offset) {
  block_ = offset / kBlockBytes;
  Refill();
  pos_ = static_cast<std::size_t>(offset % kBlockBytes);
}

}  // namespace pdfhc
