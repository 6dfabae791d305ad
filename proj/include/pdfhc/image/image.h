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

#ifndef PDFHC_IMAGE_IMAGE_H_
#define PDFHC_IMAGE_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdfhc/common/random.h"

namespace pdfhc {

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Coordinate {
  std::size_t r = 0;
  std::size_t c = 0;
  std::size_t k = 0;

  bool operator==(const Coordinate&) const = default;
  auto operator<=>(const Coordinate&) const = default;
};

// h x w RGB image with 8-bit channels, stored row-major with interleaved
// channels. The linear index of (r, c, k) is (r * w + c) * 3 + k, which is
// also the order in which noise is written.
class ImagePlane {
 public:
  static constexpr std::size_t kChannels = 3;

  ImagePlane() = default;
  ImagePlane(std::size_t h, std::size_t w, std::uint8_t fill = 0);

  std::size_t height() const { return h_; }
  std::size_t width() const { return w_; }
  std::size_t size() const { return pixels_.size(); }  // n = h * w * 3

  bool Contains(const Coordinate& p) const {
    return p.r < h_ && p.c < w_ && p.k < kChannels;
  }
  std::size_t Index(const Coordinate& p) const;  // throws ImageError if out of bounds
  Coordinate At(std::size_t index) const;

  std::uint8_t& operator[](std::size_t i) { return pixels_[i]; }
  std::uint8_t operator[](std::size_t i) const { return pixels_[i]; }
  std::uint8_t& at(const Coordinate& p) { return pixels_[Index(p)]; }
  std::uint8_t at(const Coordinate& p) const { return pixels_[Index(p)]; }

  std::span<std::uint8_t> data() { return pixels_; }
  std::span<const std::uint8_t> data() const { return pixels_; }

  bool operator==(const ImagePlane&) const = default;

 private:
  std::size_t h_ = 0;
  std::size_t w_ = 0;
  std::vector<std::uint8_t> pixels_;
};

std::uint8_t LsbRead(const ImagePlane& plane, const Coordinate& p);
void LsbWrite(ImagePlane& plane, const Coordinate& p, std::uint8_t bit);

// Bit stream over the ChaCha20 keystream. Bit i of the stream is bit (i % 8)
// of keystream byte i / 8, least significant first.
class NoiseSource {
 public:
  explicit NoiseSource(const Seed& seed) : rng_(seed) {}

  std::uint8_t NextBit();
  void SeekBit(std::uint64_t bit);
  std::uint64_t bit_position() const { return bit_pos_; }

 private:
  SecureRng rng_;
  std::uint64_t bit_pos_ = 0;
  std::uint8_t byte_ = 0;
};

// Replaces every LSB with the next bit of `src`, in linear index order.
void FillNoise(ImagePlane& plane, NoiseSource& src);

// Peak signal-to-noise ratio in dB; +infinity for identical planes.
double Psnr(const ImagePlane& a, const ImagePlane& b);

// Mean SSIM over non-overlapping 8x8 windows of each channel (trailing rows
// and columns that do not fill a window are ignored), averaged over channels.
double Ssim(const ImagePlane& a, const ImagePlane& b);

enum class AlphaPolicy { kReject, kStrip };

ImagePlane LoadPng(const std::filesystem::path& path, AlphaPolicy alpha = AlphaPolicy::kReject);
void SavePng(const ImagePlane& plane, const std::filesystem::path& path);
// PNG encoding of `plane` in memory.
std::vector<std::uint8_t> EncodePng(const ImagePlane& plane);

// Deterministic textured cover image (smooth gradients plus oscillating
// detail and mild grain), used when no natural cover is supplied.
ImagePlane SyntheticCover(std::size_t h, std::size_t w, std::uint64_t seed = 1);

}  // namespace pdfhc

#endif  // PDFHC_IMAGE_IMAGE_H_
