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

#include "pdfhc/image/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

namespace pdfhc {

ImagePlane::ImagePlane(std::size_t h, std::size_t w, std::uint8_t fill)
    : h_(h), w_(w), pixels_(h * w * kChannels, fill) {}

std::size_t ImagePlane::Index(const Coordinate& p) const {
  if (!Contains(p)) {
    throw ImageError("coordinate (" + std::to_string(p.r) + ", " + std::to_string(p.c) + ", " +
                     std::to_string(p.k) + ") outside " + std::to_string(h_) + "x" +
                     std::to_string(w_) + "x3 plane");
  }
  return (p.r * w_ + p.c) * kChannels + p.k;
}

Coordinate ImagePlane::At(std::size_t index) const {
  if (index >= pixels_.size()) throw ImageError("linear index out of range");
  const std::size_t px = index / kChannels;
  return {px / w_, px % w_, index % kChannels};
}

std::uint8_t LsbRead(const ImagePlane& plane, const Coordinate& p) { return plane.at(p) & 1; }

void LsbWrite(ImagePlane& plane, const Coordinate& p, std::uint8_t bit) {
  if (bit > 1) throw ImageError("LSB value must be 0 or 1");
  std::uint8_t& v = plane.at(p);
  v = static_cast<std::uint8_t>((v & ~1u) | bit);
}

std::uint8_t NoiseSource::NextBit() {
  const unsigned shift = bit_pos_ % 8;
  if (shift == 0) byte_ = rng_.NextByte();
  ++bit_pos_;
  return (byte_ >> shift) & 1;
}

void NoiseSource::SeekBit(std::uint64_t bit) {
  rng_.SeekByte(bit / 8);
  bit_pos_ = bit;
  if (bit % 8 != 0) byte_ = rng_.NextByte();
}

void FillNoise(ImagePlane& plane, NoiseSource& src) {
  for (auto& v : plane.data()) v = static_cast<std::uint8_t>((v & ~1u) | src.NextBit());
}

namespace {

void RequireSameShape(const ImagePlane& a, const ImagePlane& b) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw ImageError("image dimensions differ: " + std::to_string(a.height()) + "x" +
                     std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                     std::to_string(b.width()));
  }
}

}  // namespace

double Psnr(const ImagePlane& a, const ImagePlane& b) {
  RequireSameShape(a, b);
  if (a.size() == 0) throw ImageError("empty image");
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = double(a[i]) - double(b[i]);
    sum += d * d;
  }
  if (sum == 0) return std::numeric_limits<double>::infinity();
  const double mse = sum / double(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double Ssim(const ImagePlane& a, const ImagePlane& b) {
  RequireSameShape(a, b);
  constexpr std::size_t kWin = 8;
  if (a.height() < kWin || a.width() < kWin) throw ImageError("image smaller than the 8x8 SSIM window");
  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);
  constexpr double count = kWin * kWin;

  double total = 0;
  std::size_t windows = 0;
  for (std::size_t k = 0; k < ImagePlane::kChannels; ++k) {
    for (std::size_t r0 = 0; r0 + kWin <= a.height(); r0 += kWin) {
      for (std::size_t c0 = 0; c0 + kWin <= a.width(); c0 += kWin) {
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (std::size_t r = r0; r < r0 + kWin; ++r) {
          for (std::size_t c = c0; c < c0 + kWin; ++c) {
            const std::size_t i = (r * a.width() + c) * ImagePlane::kChannels + k;
            const double x = a[i], y = b[i];
            sa += x;
            sb += y;
            saa += x * x;
            sbb += y * y;
            sab += x * y;
          }
        }
        const double ma = sa / count, mb = sb / count;
        const double va = saa / count - ma * ma;
        const double vb = sbb / count - mb * mb;
        const double cov = sab / count - ma * mb;
        total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++windows;
      }
    }
  }
  return total / double(windows);
}

namespace {

std::string ColorTypeName(png_uint_32 format) {
  if (format & PNG_FORMAT_FLAG_COLORMAP) return "palette";
  std::string name = (format & PNG_FORMAT_FLAG_COLOR) ? "RGB" : "grayscale";
  if (format & PNG_FORMAT_FLAG_ALPHA) name += "+alpha";
  return name;
}

}  // namespace

ImagePlane LoadPng(const std::filesystem::path& path, AlphaPolicy alpha) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("cannot open " + path.string());
  png_byte sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof sig);
  if (in.gcount() != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw ImageError("decode failure: " + path.string() + " is not a PNG file");
  }
  in.close();

  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw ImageError("decode failure: " + std::string(image.message));
  }
  const png_uint_32 format = image.format;
  auto fail = [&](const std::string& what) {
    png_image_free(&image);
    throw ImageError(what);
  };
  if ((format & PNG_FORMAT_FLAG_COLORMAP) || !(format & PNG_FORMAT_FLAG_COLOR)) {
    fail("unsupported PNG color type " + ColorTypeName(format) + ": an 8-bit RGB image is required");
  }
  if (format & PNG_FORMAT_FLAG_LINEAR) fail("unsupported PNG bit depth: 8 bits per channel required");
  const bool has_alpha = format & PNG_FORMAT_FLAG_ALPHA;
  if (has_alpha && alpha == AlphaPolicy::kReject) {
    fail("unsupported PNG color type RGB+alpha: alpha channels are rejected by configuration");
  }

  // Read alpha images as RGBA and drop the fourth channel ourselves; asking
  // libpng for RGB would composite against a background and alter channels.
  image.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    fail("decode failure: " + std::string(image.message));
  }
  ImagePlane plane(image.height, image.width);
  if (has_alpha) {
    std::clog << "warning: stripping alpha channel from " << path.string() << "\n";
    for (std::size_t px = 0; px < std::size_t(image.height) * image.width; ++px) {
      std::copy_n(&buffer[px * 4], 3, &plane[px * 3]);
    }
  } else {
    std::copy(buffer.begin(), buffer.end(), plane.data().begin());
  }
  png_image_free(&image);
  return plane;
}

void SavePng(const ImagePlane& plane, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(plane.width());
  image.height = static_cast<png_uint_32>(plane.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, plane.data().data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageError("cannot write " + path.string() + ": " + msg);
  }
}

std::vector<std::uint8_t> EncodePng(const ImagePlane& plane) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(plane.width());
  image.height = static_cast<png_uint_32>(plane.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, plane.data().data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageError("cannot encode PNG: " + msg);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, plane.data().data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageError("cannot encode PNG: " + msg);
  }
  out.resize(size);
  return out;
}

ImagePlane SyntheticCover(std::size_t h, std::size_t w, std::uint64_t seed) {
  ImagePlane plane(h, w);
  SecureRng rng(DeriveSeed(SeedFromU64(seed), "synthetic-cover"));
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      for (std::size_t k = 0; k < 3; ++k) {
        const double phase = 1.3 * double(k);
        double v = 120 + 50 * std::sin(double(r) / 19.0 + phase) * std::cos(double(c) / 27.0) +
                   30 * std::sin(double(r * c) / 2100.0 + phase) +
                   18 * std::sin(double(c) / 2.7 + double(r) / 5.3 + phase);
        v += double(rng.Uniform(15)) - 7.0;
        plane[(r * w + c) * 3 + k] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return plane;
}

}  // namespace pdfhc
