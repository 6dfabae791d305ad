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

#ifndef PDFHC_EVALUATOR_EVALUATOR_H_
#define PDFHC_EVALUATOR_EVALUATOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdfhc/circuit/circuit.h"
#include "pdfhc/image/image.h"

namespace pdfhc {

class EvaluatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Counters maintained by the bulk bitwise layer. They depend only on the
// circuit and the plane size, never on plane contents.
struct OpCounts {
  std::uint64_t gate_steps = 0;    // bulk Fredkin calls
  std::uint64_t word_ops = 0;      // 64-bit AND/XOR operations
  std::uint64_t words_loaded = 0;
  std::uint64_t words_stored = 0;

  OpCounts& operator+=(const OpCounts& o);
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// LSBs of one plane per wire, 64 coordinates per word. Bit i of the stream
// (linear coordinate index i) is bit i % 64 of word i / 64.
class PackedPlanes {
 public:
  PackedPlanes(std::size_t planes, std::size_t coordinates);

  static PackedPlanes Pack(std::span<const ImagePlane> planes);
  // Writes the packed bits back into the LSBs; upper bits are untouched.
  void Unpack(std::span<ImagePlane> planes) const;

  std::size_t plane_count() const { return planes_; }
  std::size_t coordinates() const { return coords_; }
  std::size_t words() const { return words_; }
  std::uint64_t* plane(std::size_t i) { return data_.data() + i * words_; }
  const std::uint64_t* plane(std::size_t i) const { return data_.data() + i * words_; }

  std::uint8_t Bit(std::size_t plane, std::size_t coordinate) const {
    return (this->plane(plane)[coordinate / 64] >> (coordinate % 64)) & 1;
  }

 private:
  std::size_t planes_;
  std::size_t coords_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

// The per-gate communication view: packed LSB snapshots of the three planes
// a gate reads and the three it writes, for every gate in order. The
// reported image count follows the convention of one input and one output
// image per gate.
struct Transcript {
  std::size_t gates = 0;
  std::size_t words = 0;
  std::size_t plane_bytes = 0;  // raw h * w * 3 bytes per image
  std::vector<std::uint64_t> snapshots;  // gates * 6 * words

  std::size_t image_count() const { return 2 * gates; }
  std::size_t snapshot_count() const { return 6 * gates; }
  double megabytes() const { return double(image_count()) * double(plane_bytes) / 1e6; }
  // Packed snapshot k in [0, 6) of gate g: 0..2 before (c, a, b), 3..5 after.
  std::span<const std::uint64_t> Snapshot(std::size_t g, std::size_t k) const {
    return {snapshots.data() + (g * 6 + k) * words, words};
  }
};

// kBitsliced packs 64 LSBs per word, runs the gates on words and unpacks;
// kBytewise runs the gates directly on the channel bytes with SIMD masks.
// Both walk cache-sized coordinate chunks and give identical planes.
enum class Kernel { kBitsliced, kBytewise };

struct EvalOptions {
  unsigned threads = 1;
  bool transcript = false;
  Kernel kernel = Kernel::kBitsliced;
  // Words (64 coordinates each) per work unit; 0 picks a cache-sized chunk.
  std::size_t chunk_words = 0;
};

struct EvalResult {
  OpCounts ops;
  std::optional<Transcript> transcript;
};

// Applies every gate of `circuit`, in order, at every coordinate of the wire
// planes (one plane per wire, indexed by wire index), in place. Throws
// EvaluatorError when a plane is missing or dimensions differ.
EvalResult Evaluate(const Circuit& circuit, std::span<ImagePlane> planes,
                    const EvalOptions& options = {});

// The gate loop alone, on already packed planes.
OpCounts EvaluatePacked(const Circuit& circuit, PackedPlanes& planes,
                        const EvalOptions& options = {});

// Reference path: one coordinate at a time through FredkinApply on raw
// channel values. Single-threaded.
void EvaluateNaive(const Circuit& circuit, std::span<ImagePlane> planes);

struct UniformityReport {
  bool op_counts_equal = false;
  std::size_t runs = 0;
  double mean_ms_original = 0;
  double mean_ms_toggled = 0;
  double t_statistic = 0;
  double p_value = 1;
  bool passed = false;  // op counts equal and p > 0.01
};

// Evaluates `planes` and a copy with the LSBs at `secret_coordinates` toggled
// on every plane, interleaved over `runs` repetitions, and compares operation
// counts and wall time (paired two-sided t-test).
UniformityReport UniformityAudit(const Circuit& circuit, std::span<const ImagePlane> planes,
                                 std::span<const std::size_t> secret_coordinates,
                                 std::size_t runs = 30, const EvalOptions& options = {});

}  // namespace pdfhc

#endif  // PDFHC_EVALUATOR_EVALUATOR_H_
