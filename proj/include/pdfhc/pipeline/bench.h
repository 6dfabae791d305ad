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

#ifndef PDFHC_PIPELINE_BENCH_H_
#define PDFHC_PIPELINE_BENCH_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfhc/circuit/circuit.h"
#include "pdfhc/common/random.h"
#include "pdfhc/evaluator/evaluator.h"

namespace pdfhc {

// Published per-gate bootstrapping time used for the static TFHE reference
// column. Never measured here.
inline constexpr double kTfheMsPerGate = 13.0;

struct BenchMatrix {
  std::vector<std::size_t> gate_counts{5, 17, 81, 289};
  std::vector<std::size_t> sizes{128, 256, 512};  // square images
  std::vector<std::size_t> scenario_counts{2, 4, 8};
  std::size_t sweep_gates = 289;  // the L sweep runs at this m and size
  std::size_t sweep_size = 256;
  std::size_t reps = 10;
  std::size_t warmup = 1;
  std::size_t register_wires = 64;
  unsigned threads = 1;
  // Bytewise cost is proportional to gates x pixels, which is what the fits
  // measure; the bitsliced kernel adds a per-plane pack/unpack term.
  Kernel kernel = Kernel::kBytewise;
  bool transcript = false;
  bool measure_png = true;
  bool naive_check = true;
  Seed seed{};
};

struct TimingStat {
  double mean = 0;
  double sd = 0;  // sample standard deviation
  double median = 0;
};

TimingStat Summarize(std::span<const double> samples);

struct BenchRecord {
  std::string circuit;
  std::size_t gates = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t scenarios = 0;
  std::size_t reps = 0;
  TimingStat embed;
  TimingStat compute;
  TimingStat extract;
  TimingStat total;
  std::size_t planes_held = 0;
  std::size_t transcript_images = 0;
  double transcript_mb = 0;
  std::size_t raw_bytes = 0;
  std::optional<std::size_t> png_bytes;
  double psnr = 0;
  double tfhe_reference_ms = 0;  // gates * 13 ms
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Ordinary least squares; r2 = 1 when y is constant and perfectly fit.
LinearFit FitLine(std::span<const double> x, std::span<const double> y);

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<std::pair<std::size_t, LinearFit>> fit_vs_gates;   // per image side
  std::vector<std::pair<std::size_t, LinearFit>> fit_vs_pixels;  // per gate count
  double scenario_spread = 0;  // (max - min) / min of total time over the L sweep
  std::optional<double> naive_ms;
  std::optional<double> vectorized_ms;
  double min_r2() const;
  std::optional<double> speedup() const;
};

// Fixed-width register circuit: `wires` wires (16 inputs, the rest
// alternating 0/1 ancillae) and m uniformly random gates.
Circuit RegisterCircuit(std::size_t gates, std::size_t wires, const Seed& seed);

BenchReport RunBench(const BenchMatrix& matrix, std::ostream* progress = nullptr);

std::string BenchCsvHeader();
std::string BenchCsvRow(const BenchRecord& record);
nlohmann::json BenchReportToJson(const BenchReport& report);

}  // namespace pdfhc

#endif  // PDFHC_PIPELINE_BENCH_H_
