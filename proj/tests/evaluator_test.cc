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

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "pdfhc/circuit/catalog.h"
#include "pdfhc/evaluator/evaluator.h"
#include "test_util.h"

namespace pdfhc {
namespace {

using testing::RandomBits;
using testing::RandomCircuit;

std::vector<ImagePlane> NoisePlanes(std::size_t count, std::size_t h, std::size_t w,
                                    std::uint64_t seed) {
  std::vector<ImagePlane> planes;
  NoiseSource src(SeedFromU64(seed));
  for (std::size_t i = 0; i < count; ++i) {
    ImagePlane p = SyntheticCover(h, w, seed + i);
    FillNoise(p, src);
    planes.push_back(std::move(p));
  }
  return planes;
}

// Writes the circuit's initial wire state for `inputs` at coordinate `lane`.
void PlaceLane(const Circuit& c, std::vector<ImagePlane>& planes, std::size_t lane,
               const BitVector& inputs) {
  const BitVector state = InitialState(c, inputs);
  for (WireIndex w = 0; w < c.wire_count(); ++w) {
    planes[w][lane] = static_cast<std::uint8_t>((planes[w][lane] & ~1u) | state[w]);
  }
}

TEST(Evaluate, ZeroGatesIsIdentity) {
  Circuit c("empty");
  for (int i = 0; i < 3; ++i) c.AddWire(WireKind::kInternal);
  auto planes = NoisePlanes(3, 16, 16, 1);
  const auto before = planes;
  Evaluate(c, planes);
  EXPECT_EQ(planes, before);
}

TEST(Evaluate, SingleAndGateLaneAndNoise) {
  Circuit c("and");
  const auto x = c.AddWire(WireKind::kInput);
  const auto y = c.AddWire(WireKind::kInput);
  const auto z = c.AddWire(WireKind::kAncillaZero);
  c.AddInput(x);
  c.AddInput(y);
  c.AddGate(x, y, z);
  c.AddOutput(z);
  auto planes = NoisePlanes(3, 32, 32, 2);
  const std::size_t lane = 1234;
  PlaceLane(c, planes, lane, {1, 1});
  const auto before = planes;
  Evaluate(c, planes);
  EXPECT_EQ(planes[z][lane] & 1, 1);
  for (std::size_t i = 0; i < planes[0].size(); ++i) {
    const auto expect = FredkinApply(before[0][i] & 1, before[1][i] & 1, before[2][i] & 1);
    for (int k = 0; k < 3; ++k) ASSERT_EQ(planes[k][i] & 1, expect[k]) << i;
  }
}

TEST(Evaluate, CatalogLanesMatchSimulate) {
  std::mt19937_64 rng(3);
  const auto catalog = StandardCircuits();
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit& c = catalog[trial % catalog.size()].circuit;
    auto planes = NoisePlanes(c.wire_count(), 24, 24, 100 + trial);
    const auto in = RandomBits(rng, c.input_count());
    const std::size_t lane = rng() % planes[0].size();
    PlaceLane(c, planes, lane, in);
    Evaluate(c, planes);
    BitVector out;
    for (const auto& o : c.outputs()) out.push_back(planes[o.wire][lane] & 1);
    ASSERT_EQ(out, Simulate(c, in)) << c.name();
  }
}

TEST(Evaluate, MatchesNaivePathIncludingTails) {
  std::mt19937_64 rng(4);
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{7, 5}, {1, 1}, {16, 16}, {13, 29}}) {
    const Circuit c = RandomCircuit(rng, 12, 3, 40);
    auto a = NoisePlanes(12, h, w, h * w);
    auto b = a;
    Evaluate(c, a);
    EvaluateNaive(c, b);
    EXPECT_EQ(a, b) << h << "x" << w;
  }
}

TEST(Evaluate, BytewiseKernelMatchesBitsliced) {
  std::mt19937_64 rng(41);
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{7, 5}, {1, 1}, {33, 31}, {64, 64}}) {
    const Circuit c = RandomCircuit(rng, 20, 4, 120);
    const auto base = NoisePlanes(20, h, w, 7 * h + w);
    auto a = base;
    Evaluate(c, a);
    for (unsigned threads : {1u, 3u}) {
      for (std::size_t chunk : {0u, 1u, 5u}) {
        auto b = base;
        Evaluate(c, b, {.threads = threads, .kernel = Kernel::kBytewise, .chunk_words = chunk});
        EXPECT_EQ(a, b) << h << "x" << w << " " << threads << "/" << chunk;
      }
    }
    auto n = base;
    EvaluateNaive(c, n);
    EXPECT_EQ(a, n);
  }
}

TEST(Evaluate, BitDeterministicAcrossThreadsAndChunks) {
  const Circuit c = Multiplier8Circuit();
  const auto base = NoisePlanes(c.wire_count(), 40, 40, 5);
  auto reference = base;
  Evaluate(c, reference);
  for (unsigned threads : {2u, 3u, 8u}) {
    for (std::size_t chunk : {1u, 7u, 64u, 4096u}) {
      auto p = base;
      const auto r = Evaluate(c, p, {.threads = threads, .chunk_words = chunk});
      EXPECT_EQ(p, reference) << threads << "/" << chunk;
      EXPECT_EQ(r.ops.word_ops, 4 * c.gate_count() * ((40 * 40 * 3 + 63) / 64));
    }
  }
}

TEST(Evaluate, PerCoordinateMultisetConserved) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = RandomCircuit(rng, 8 + rng() % 8, 2, 1 + rng() % 50);
    auto planes = NoisePlanes(c.wire_count(), 64, 64, 200 + trial);
    std::vector<int> weight(planes[0].size(), 0);
    for (const auto& p : planes) {
      for (std::size_t i = 0; i < p.size(); ++i) weight[i] += p[i] & 1;
    }
    Evaluate(c, planes);
    for (std::size_t i = 0; i < weight.size(); ++i) {
      int after = 0;
      for (const auto& p : planes) after += p[i] & 1;
      ASSERT_EQ(after, weight[i]) << "coordinate " << i;
    }
  }
}

// Each plane's ones-fraction is compared with the 3-sigma binomial band. With
// hundreds of planes a few chance excursions are expected, so the number of
// excursions is held to the 99.9% quantile of Binomial(planes, P(|Z| > 3)),
// and the pooled fraction to its own 3-sigma band.
TEST(Evaluate, NoisePlanesStayBalanced) {
  std::size_t planes_seen = 0, excursions = 0;
  double pooled_ones = 0, pooled_n = 0;
  for (const auto& entry : StandardCircuits()) {
    auto planes = NoisePlanes(entry.circuit.wire_count(), 64, 64, 300);
    Evaluate(entry.circuit, planes);
    const double n = double(planes[0].size());
    const double band = 3 * std::sqrt(0.25 / n);
    for (const auto& p : planes) {
      double ones = 0;
      for (std::size_t i = 0; i < p.size(); ++i) ones += p[i] & 1;
      ++planes_seen;
      excursions += std::fabs(ones / n - 0.5) > band;
      pooled_ones += ones;
      pooled_n += n;
    }
  }
  const double tail = std::erfc(3 / std::sqrt(2.0));
  const auto allowed = boost::math::quantile(
      boost::math::binomial(double(planes_seen), tail), 0.999);
  EXPECT_LE(double(excursions), allowed) << excursions << " of " << planes_seen;
  EXPECT_NEAR(pooled_ones / pooled_n, 0.5, 3 * std::sqrt(0.25 / pooled_n));
}

TEST(Evaluate, ReversedGatesUndo) {
  const Circuit c = Adder4Circuit();
  auto planes = NoisePlanes(c.wire_count(), 32, 48, 7);
  const auto before = planes;
  Evaluate(c, planes);
  Circuit reversed = c;
  std::vector<FredkinGate> gates(c.gates().rbegin(), c.gates().rend());
  reversed.SetGates(gates);
  Evaluate(reversed, planes);
  EXPECT_EQ(planes, before);
}

TEST(Evaluate, UpperBitsPreserved) {
  const Circuit c = Comparator8Circuit();
  auto planes = NoisePlanes(c.wire_count(), 32, 32, 8);
  const auto before = planes;
  Evaluate(c, planes, {.threads = 2, .chunk_words = 3});
  for (std::size_t p = 0; p < planes.size(); ++p) {
    for (std::size_t i = 0; i < planes[p].size(); ++i) {
      ASSERT_EQ(planes[p][i] >> 1, before[p][i] >> 1);
    }
  }
}

TEST(Evaluate, TranscriptView) {
  const Circuit c = SmallExprCircuit();
  auto planes = NoisePlanes(c.wire_count(), 16, 16, 9);
  auto plain = planes;
  const auto r = Evaluate(c, planes, {.threads = 1, .transcript = true, .chunk_words = 256});
  Evaluate(c, plain);
  EXPECT_EQ(planes, plain);
  ASSERT_TRUE(r.transcript.has_value());
  const Transcript& t = *r.transcript;
  EXPECT_EQ(t.image_count(), 2 * c.gate_count());
  EXPECT_EQ(t.snapshot_count(), 6 * c.gate_count());
  EXPECT_DOUBLE_EQ(t.megabytes(), 2.0 * c.gate_count() * 16 * 16 * 3 / 1e6);
  for (std::size_t g = 0; g < t.gates; ++g) {
    const auto cb = t.Snapshot(g, 0), ab = t.Snapshot(g, 1), bb = t.Snapshot(g, 2);
    const auto ca = t.Snapshot(g, 3), aa = t.Snapshot(g, 4), ba = t.Snapshot(g, 5);
    for (std::size_t w = 0; w < t.words; ++w) {
      const std::uint64_t d = (ab[w] ^ bb[w]) & cb[w];
      ASSERT_EQ(ca[w], cb[w]);
      ASSERT_EQ(aa[w], ab[w] ^ d);
      ASSERT_EQ(ba[w], bb[w] ^ d);
    }
  }
}

TEST(Evaluate, ContractViolations) {
  const Circuit c = Threshold3Circuit();
  auto planes = NoisePlanes(c.wire_count() - 1, 8, 8, 1);
  EXPECT_THROW(Evaluate(c, planes), EvaluatorError);
  auto uneven = NoisePlanes(c.wire_count(), 8, 8, 1);
  uneven[2] = ImagePlane(8, 9);
  EXPECT_THROW(Evaluate(c, uneven), EvaluatorError);
}

TEST(PackedPlanes, RoundTrip) {
  auto planes = NoisePlanes(3, 11, 7, 10);
  auto packed = PackedPlanes::Pack(planes);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t i = 0; i < planes[p].size(); ++i) ASSERT_EQ(packed.Bit(p, i), planes[p][i] & 1);
  }
  auto scrambled = planes;
  for (auto& p : scrambled) {
    for (auto& v : p.data()) v ^= 1;
  }
  packed.Unpack(scrambled);
  EXPECT_EQ(scrambled, planes);
}

TEST(OpCounts, IndependentOfPlaneContents) {
  const Circuit c = Multiplier8Circuit();
  std::vector<ImagePlane> zeros(c.wire_count(), ImagePlane(32, 32, 0));
  std::vector<ImagePlane> ones(c.wire_count(), ImagePlane(32, 32, 255));
  auto noise = NoisePlanes(c.wire_count(), 32, 32, 11);
  auto toggled = noise;
  for (auto& p : toggled) p[77] ^= 1;
  const auto a = Evaluate(c, zeros).ops;
  EXPECT_EQ(a, Evaluate(c, ones).ops);
  EXPECT_EQ(a, Evaluate(c, noise).ops);
  EXPECT_EQ(a, Evaluate(c, toggled).ops);
  EXPECT_EQ(a.word_ops, 4 * c.gate_count() * ((32 * 32 * 3 + 63) / 64));
}

TEST(UniformityAudit, LaneToggleIsInvisible) {
  const Circuit c = Multiplier8Circuit();
  const auto planes = NoisePlanes(c.wire_count(), 64, 64, 12);
  const std::vector<std::size_t> lanes = {5, 999, 4000};
  const auto report = UniformityAudit(c, planes, lanes, 30);
  EXPECT_TRUE(report.op_counts_equal);
  EXPECT_EQ(report.runs, 30u);
  EXPECT_GT(report.p_value, 0.01) << report.mean_ms_original << " vs " << report.mean_ms_toggled;
  EXPECT_TRUE(report.passed);
}

}  // namespace
}  // namespace pdfhc
