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

#include "pdfhc/evaluator/evaluator.h"

#include <algorithm>
#include <array>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#if defined(__AVX2__)
#include <immintrin.h>
#elif defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace pdfhc {

OpCounts& OpCounts::operator+=(const OpCounts& o) {
  gate_steps += o.gate_steps;
  word_ops += o.word_ops;
  words_loaded += o.words_loaded;
  words_stored += o.words_stored;
  return *this;
}

namespace {

constexpr std::uint64_t kLsbMask = 0x0101010101010101ull;

// Inverse of the LSB gather: bit j of `bits` goes to the LSB of byte j.
constexpr std::array<std::uint64_t, 256> MakeSpreadTable() {
  std::array<std::uint64_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    for (unsigned j = 0; j < 8; ++j) {
      if (b >> j & 1) t[b] |= std::uint64_t{1} << (8 * j);
    }
  }
  return t;
}
constexpr auto kSpread = MakeSpreadTable();

// LSBs of 64 consecutive bytes, first byte in bit 0.
inline std::uint64_t Gather64(const std::uint8_t* p) {
#if defined(__AVX2__)
  const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
  const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + 32));
  const auto a = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_slli_epi64(lo, 7)));
  const auto b = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_slli_epi64(hi, 7)));
  return std::uint64_t{a} | (std::uint64_t{b} << 32);
#elif defined(__SSE2__)
  std::uint64_t word = 0;
  for (int q = 0; q < 4; ++q) {
    const __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p + 16 * q));
    const auto bits = static_cast<std::uint16_t>(_mm_movemask_epi8(_mm_slli_epi64(v, 7)));
    word |= std::uint64_t{bits} << (16 * q);
  }
  return word;
#else
  std::uint64_t word = 0;
  for (unsigned g = 0; g < 8; ++g) {
    std::uint64_t v;
    std::memcpy(&v, p + 8 * g, 8);
    word |= (((v & kLsbMask) * 0x0102040810204080ull) >> 56) << (8 * g);
  }
  return word;
#endif
}

// Replaces the LSBs of 64 consecutive bytes with the bits of `word`.
inline void Scatter64(std::uint64_t word, std::uint8_t* p) {
#if defined(__AVX2__)
  // Byte j of a 32-byte block takes bit j of its 32-bit slice.
  const __m256i route = _mm256_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1,
                                         2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3);
  const __m256i select = _mm256_set1_epi64x(0x8040201008040201ll);
  const __m256i one = _mm256_set1_epi8(1);
  for (int h = 0; h < 2; ++h) {
    const __m256i bits = _mm256_shuffle_epi8(
        _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(word >> (32 * h)))), route);
    const __m256i lsb = _mm256_and_si256(_mm256_cmpeq_epi8(_mm256_and_si256(bits, select), select), one);
    auto* dst = reinterpret_cast<__m256i*>(p + 32 * h);
    const __m256i v = _mm256_loadu_si256(dst);
    _mm256_storeu_si256(dst, _mm256_or_si256(_mm256_andnot_si256(one, v), lsb));
  }
#elif defined(__SSE2__)
  const __m128i select = _mm_setr_epi8(1, 2, 4, 8, 16, 32, 64, -128, 1, 2, 4, 8, 16, 32, 64, -128);
  const __m128i one = _mm_set1_epi8(1);
  for (int q = 0; q < 4; ++q) {
    const auto bits = static_cast<std::uint16_t>(word >> (16 * q));
    const __m128i spread = _mm_unpacklo_epi64(_mm_set1_epi8(static_cast<char>(bits & 0xff)),
                                              _mm_set1_epi8(static_cast<char>(bits >> 8)));
    const __m128i lsb = _mm_and_si128(_mm_cmpeq_epi8(_mm_and_si128(spread, select), select), one);
    auto* dst = reinterpret_cast<__m128i*>(p + 16 * q);
    const __m128i v = _mm_loadu_si128(dst);
    _mm_storeu_si128(dst, _mm_or_si128(_mm_andnot_si128(one, v), lsb));
  }
#else
  for (unsigned g = 0; g < 8; ++g) {
    std::uint64_t v;
    std::memcpy(&v, p + 8 * g, 8);
    v = (v & ~kLsbMask) | kSpread[(word >> (8 * g)) & 0xff];
    std::memcpy(p + 8 * g, &v, 8);
  }
#endif
}

// Packs the LSBs of bytes [0, n) into dst[0, ceil(n / 64)).
void PackRange(const std::uint8_t* src, std::size_t n, std::uint64_t* dst) {
  const std::size_t full = n / 64;
  for (std::size_t w = 0; w < full; ++w) dst[w] = Gather64(src + 64 * w);
  if (n % 64 != 0) {
    std::uint64_t word = 0;
    for (std::size_t i = full * 64; i < n; ++i) word |= std::uint64_t(src[i] & 1) << (i % 64);
    dst[full] = word;
  }
}

void UnpackRange(const std::uint64_t* src, std::size_t n, std::uint8_t* dst) {
  const std::size_t full = n / 64;
  for (std::size_t w = 0; w < full; ++w) Scatter64(src[w], dst + 64 * w);
  for (std::size_t i = full * 64; i < n; ++i) {
    dst[i] = static_cast<std::uint8_t>((dst[i] & ~1u) | ((src[full] >> (i % 64)) & 1));
  }
}

}  // namespace

PackedPlanes::PackedPlanes(std::size_t planes, std::size_t coordinates)
    : planes_(planes), coords_(coordinates), words_((coordinates + 63) / 64),
      data_(planes * words_, 0) {}

PackedPlanes PackedPlanes::Pack(std::span<const ImagePlane> planes) {
  const std::size_t n = planes.empty() ? 0 : planes[0].size();
  PackedPlanes packed(planes.size(), n);
  for (std::size_t p = 0; p < planes.size(); ++p) PackRange(planes[p].data().data(), n, packed.plane(p));
  return packed;
}

void PackedPlanes::Unpack(std::span<ImagePlane> planes) const {
  for (std::size_t p = 0; p < planes_; ++p) UnpackRange(plane(p), coords_, planes[p].data().data());
}

namespace {

// d = (x ^ y) & c; x ^= d; y ^= d over `len` words.
inline void BulkFredkin(const std::uint64_t* __restrict c, std::uint64_t* __restrict x,
                        std::uint64_t* __restrict y, std::size_t len, OpCounts& ops) {
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t d = (x[i] ^ y[i]) & c[i];
    x[i] ^= d;
    y[i] ^= d;
  }
  ops.gate_steps += 1;
  ops.word_ops += 4 * len;
  ops.words_loaded += 3 * len;
  ops.words_stored += 2 * len;
}

void CheckPlaneCount(const Circuit& circuit, std::size_t planes) {
  if (planes != circuit.wire_count()) {
    throw EvaluatorError("circuit has " + std::to_string(circuit.wire_count()) +
                         " wires but " + std::to_string(planes) + " planes were supplied");
  }
}

}  // namespace

OpCounts EvaluatePacked(const Circuit& circuit, PackedPlanes& planes, const EvalOptions& options) {
  CheckPlaneCount(circuit, planes.plane_count());
  const std::size_t words = planes.words();
  const std::size_t chunk = options.chunk_words == 0 ? 256 : options.chunk_words;
  const std::size_t chunks = (words + chunk - 1) / chunk;
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(chunks, 1)));

  // Each worker owns chunks k, k + threads, ...; chunks are independent, so
  // the result does not depend on the worker count.
  std::vector<OpCounts> per_thread(threads);
  auto work = [&](unsigned t) {
    OpCounts& ops = per_thread[t];
    for (std::size_t k = t; k < chunks; k += threads) {
      const std::size_t begin = k * chunk;
      const std::size_t len = std::min(chunk, words - begin);
      for (const auto& g : circuit.gates()) {
        BulkFredkin(planes.plane(g.control) + begin, planes.plane(g.data_a) + begin,
                    planes.plane(g.data_b) + begin, len, ops);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  OpCounts total;
  for (const auto& o : per_thread) total += o;
  return total;
}

namespace {

Transcript EvaluateWithTranscript(const Circuit& circuit, PackedPlanes& planes,
                                  std::size_t plane_bytes, OpCounts& ops) {
  Transcript tr;
  tr.gates = circuit.gate_count();
  tr.words = planes.words();
  tr.plane_bytes = plane_bytes;
  tr.snapshots.resize(tr.gates * 6 * tr.words);
  const std::size_t w = tr.words;
  for (std::size_t g = 0; g < tr.gates; ++g) {
    const auto& gate = circuit.gates()[g];
    const std::array<std::size_t, 3> wires = {gate.control, gate.data_a, gate.data_b};
    std::uint64_t* snap = tr.snapshots.data() + g * 6 * w;
    for (int k = 0; k < 3; ++k) std::copy_n(planes.plane(wires[k]), w, snap + k * w);
    BulkFredkin(planes.plane(gate.control), planes.plane(gate.data_a), planes.plane(gate.data_b), w,
                ops);
    for (int k = 0; k < 3; ++k) std::copy_n(planes.plane(wires[k]), w, snap + (3 + k) * w);
  }
  return tr;
}

}  // namespace

namespace {

// Pack, evaluate and unpack one coordinate chunk at a time so the bytes of a
// chunk are still in cache when they are written back.
OpCounts EvaluateFused(const Circuit& circuit, std::span<ImagePlane> planes,
                       const EvalOptions& options) {
  const std::size_t wires = planes.size();
  const std::size_t n = planes.empty() ? 0 : planes[0].size();
  const std::size_t words = (n + 63) / 64;
  std::size_t chunk = options.chunk_words;
  if (chunk == 0) chunk = std::clamp<std::size_t>(8192 / std::max<std::size_t>(wires, 1), 4, 256);
  const std::size_t chunks = (words + chunk - 1) / chunk;
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(chunks, 1)));

  std::vector<OpCounts> per_thread(threads);
  auto work = [&](unsigned t) {
    OpCounts& ops = per_thread[t];
    std::vector<std::uint64_t> local(wires * chunk);
    for (std::size_t k = t; k < chunks; k += threads) {
      const std::size_t begin = k * chunk;
      const std::size_t len = std::min(chunk, words - begin);
      const std::size_t first = begin * 64;
      const std::size_t count = std::min(n, (begin + len) * 64) - first;
      for (std::size_t p = 0; p < wires; ++p) {
        PackRange(planes[p].data().data() + first, count, local.data() + p * chunk);
      }
      for (const auto& g : circuit.gates()) {
        BulkFredkin(local.data() + g.control * chunk, local.data() + g.data_a * chunk,
                    local.data() + g.data_b * chunk, len, ops);
      }
      for (std::size_t p = 0; p < wires; ++p) {
        UnpackRange(local.data() + p * chunk, count, planes[p].data().data() + first);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  OpCounts total;
  for (const auto& o : per_thread) total += o;
  return total;
}

// Fredkin on the LSBs of `len` bytes; the upper bits stay put.
void ByteFredkin(const std::uint8_t* __restrict c, std::uint8_t* __restrict x,
                 std::uint8_t* __restrict y, std::size_t len) {
  std::size_t i = 0;
#if defined(__AVX2__)
  const __m256i one = _mm256_set1_epi8(1);
  for (; i + 32 <= len; i += 32) {
    const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
    const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    const __m256i d = _mm256_and_si256(_mm256_and_si256(_mm256_xor_si256(vx, vy), vc), one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(x + i), _mm256_xor_si256(vx, d));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_xor_si256(vy, d));
  }
#endif
  for (; i + 8 <= len; i += 8) {
    std::uint64_t vc, vx, vy;
    std::memcpy(&vc, c + i, 8);
    std::memcpy(&vx, x + i, 8);
    std::memcpy(&vy, y + i, 8);
    const std::uint64_t d = (vx ^ vy) & vc & kLsbMask;
    vx ^= d;
    vy ^= d;
    std::memcpy(x + i, &vx, 8);
    std::memcpy(y + i, &vy, 8);
  }
  for (; i < len; ++i) {
    const auto d = static_cast<std::uint8_t>((x[i] ^ y[i]) & c[i] & 1);
    x[i] ^= d;
    y[i] ^= d;
  }
}

OpCounts EvaluateBytewise(const Circuit& circuit, std::span<ImagePlane> planes,
                          const EvalOptions& options) {
  const std::size_t n = planes.empty() ? 0 : planes[0].size();
  const std::size_t words = (n + 63) / 64;
  std::size_t chunk = options.chunk_words;
  if (chunk == 0) chunk = 32;
  const std::size_t chunks = (words + chunk - 1) / chunk;
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(chunks, 1)));

  std::vector<OpCounts> per_thread(threads);
  auto work = [&](unsigned t) {
    OpCounts& ops = per_thread[t];
    for (std::size_t k = t; k < chunks; k += threads) {
      const std::size_t first = k * chunk * 64;
      const std::size_t count = std::min(n, first + chunk * 64) - first;
      const std::size_t len = (count + 63) / 64;
      for (const auto& g : circuit.gates()) {
        ByteFredkin(planes[g.control].data().data() + first, planes[g.data_a].data().data() + first,
                    planes[g.data_b].data().data() + first, count);
        ops.gate_steps += 1;
        ops.word_ops += 4 * len;
        ops.words_loaded += 3 * len;
        ops.words_stored += 2 * len;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  OpCounts total;
  for (const auto& o : per_thread) total += o;
  return total;
}

}  // namespace

EvalResult Evaluate(const Circuit& circuit, std::span<ImagePlane> planes,
                    const EvalOptions& options) {
  CheckPlaneCount(circuit, planes.size());
  for (const auto& p : planes) {
    if (p.height() != planes[0].height() || p.width() != planes[0].width()) {
      throw EvaluatorError("wire planes differ in dimensions");
    }
  }
  EvalResult result;
  if (options.transcript) {
    PackedPlanes packed = PackedPlanes::Pack(planes);
    result.transcript =
        EvaluateWithTranscript(circuit, packed, planes.empty() ? 0 : planes[0].size(), result.ops);
    packed.Unpack(planes);
  } else if (options.kernel == Kernel::kBytewise) {
    result.ops = EvaluateBytewise(circuit, planes, options);
  } else {
    result.ops = EvaluateFused(circuit, planes, options);
  }
  return result;
}

void EvaluateNaive(const Circuit& circuit, std::span<ImagePlane> planes) {
  CheckPlaneCount(circuit, planes.size());
  for (const auto& gate : circuit.gates()) {
    ImagePlane& pc = planes[gate.control];
    ImagePlane& pa = planes[gate.data_a];
    ImagePlane& pb = planes[gate.data_b];
    if (pc.size() != pa.size() || pc.size() != pb.size()) {
      throw EvaluatorError("wire planes differ in dimensions");
    }
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const auto out = FredkinApply(pc[i] & 1, pa[i] & 1, pb[i] & 1);
      pa[i] = static_cast<std::uint8_t>((pa[i] & ~1u) | out[1]);
      pb[i] = static_cast<std::uint8_t>((pb[i] & ~1u) | out[2]);
    }
  }
}

UniformityReport UniformityAudit(const Circuit& circuit, std::span<const ImagePlane> planes,
                                 std::span<const std::size_t> secret_coordinates,
                                 std::size_t runs, const EvalOptions& options) {
  std::vector<ImagePlane> original(planes.begin(), planes.end());
  std::vector<ImagePlane> toggled = original;
  for (auto& p : toggled) {
    for (std::size_t i : secret_coordinates) p[i] ^= 1;
  }
  using Clock = std::chrono::steady_clock;
  auto timed = [&](const std::vector<ImagePlane>& input, OpCounts& ops) {
    std::vector<ImagePlane> work = input;
    const auto t0 = Clock::now();
    ops = Evaluate(circuit, work, options).ops;
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  UniformityReport report;
  report.runs = runs;
  report.op_counts_equal = true;
  OpCounts first_a, first_b;
  timed(original, first_a);  // warm-up
  timed(toggled, first_b);
  report.op_counts_equal = first_a == first_b;

  std::vector<double> diffs;
  double sum_a = 0, sum_b = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    OpCounts oa, ob;
    double ta, tb;
    // Alternate which variant runs first so order effects cancel.
    if (r % 2 == 0) {
      ta = timed(original, oa);
      tb = timed(toggled, ob);
    } else {
      tb = timed(toggled, ob);
      ta = timed(original, oa);
    }
    report.op_counts_equal = report.op_counts_equal && oa == first_a && ob == first_a;
    sum_a += ta;
    sum_b += tb;
    diffs.push_back(ta - tb);
  }
  report.mean_ms_original = sum_a / double(runs);
  report.mean_ms_toggled = sum_b / double(runs);
  if (runs >= 2) {
    double mean = 0;
    for (double d : diffs) mean += d;
    mean /= double(runs);
    double var = 0;
    for (double d : diffs) var += (d - mean) * (d - mean);
    var /= double(runs - 1);
    if (var > 0) {
      report.t_statistic = mean / std::sqrt(var / double(runs));
      boost::math::students_t dist(double(runs - 1));
      report.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(report.t_statistic)));
    } else {
      report.p_value = mean == 0 ? 1.0 : 0.0;
    }
  }
  report.passed = report.op_counts_equal && report.p_value > 0.01;
  return report;
}

}  // namespace pdfhc
