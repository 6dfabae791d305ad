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

#include <sys/stat.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pdfhc/circuit/catalog.h"
#include "pdfhc/client/bundle_io.h"
#include "pdfhc/client/scheme.h"
#include "pdfhc/evaluator/evaluator.h"
#include "test_util.h"

namespace pdfhc {
namespace {

using testing::CatalogOracles;
using testing::RandomBits;

std::vector<ScenarioSpec> SpecsFor(const std::vector<Circuit>& circuits, std::mt19937_64& rng) {
  std::vector<ScenarioSpec> specs;
  for (std::size_t j = 0; j < circuits.size(); ++j) {
    specs.push_back({"scenario-" + std::to_string(j), circuits[j],
                     RandomBits(rng, circuits[j].input_count()), "narrative " + std::to_string(j)});
  }
  return specs;
}

std::vector<ImagePlane> Covers(std::size_t h, std::size_t w) {
  return {SyntheticCover(h, w, 1), SyntheticCover(h, w, 2)};
}

// embed -> evaluate -> extract.
std::vector<ImagePlane> RunPipeline(ScenarioBundle& bundle, std::uint64_t seed,
                                    AncillaFill fill = AncillaFill::kLanes) {
  auto planes = Embed(bundle, Covers(bundle.height, bundle.width), SeedFromU64(seed), {fill, {}});
  Evaluate(bundle.evaluated, planes);
  Extract(bundle, planes);
  return planes;
}

TEST(LocGen, Example) {
  SecureRng rng(SeedFromU64(1));
  const auto a = LocGen(128, 128, 4, 1, rng);
  ASSERT_EQ(a.lanes.size(), 4u);
  EXPECT_EQ(a.coordinate_count(), 49152u);
  std::set<std::size_t> all;
  for (const auto& l : a.lanes) {
    ASSERT_EQ(l.size(), 1u);
    EXPECT_LT(l[0], 49152u);
    all.insert(l[0]);
  }
  EXPECT_EQ(all.size(), 4u);
}

TEST(LocGen, CapacityBoundary) {
  SecureRng rng(SeedFromU64(2));
  const std::size_t n = 64 * 64 * 3;
  EXPECT_NO_THROW(LocGen(64, 64, 1, n / 100, rng));
  EXPECT_THROW(LocGen(64, 64, 1, n / 100 + 1, rng), ClientError);
  EXPECT_THROW(LocGen(64, 64, 0, 1, rng), ClientError);
}

TEST(LocGen, DisjointForEverySeed) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    SecureRng rng(SeedFromU64(s));
    const auto a = LocGen(32, 32, 5, 6, rng);
    std::set<std::size_t> all;
    for (const auto& l : a.lanes) all.insert(l.begin(), l.end());
    ASSERT_EQ(all.size(), 30u);
  }
}

TEST(LocGen, UniformOverCoarseBins) {
  constexpr int kDraws = 10000, kBins = 48;
  const std::size_t n = 128 * 128 * 3;
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    SecureRng rng(DeriveSeed(SeedFromU64(3), "draw", i));
    ++counts[LocGen(128, 128, 1, 1, rng).lanes[0][0] * kBins / n];
  }
  const double e = double(kDraws) / kBins;
  double chi = 0;
  for (int c : counts) chi += (c - e) * (c - e) / e;
  EXPECT_GT(1 - boost::math::cdf(boost::math::chi_squared(kBins - 1), chi), 0.01);
}

TEST(CreateBundle, PadsAndSharesSlots) {
  std::mt19937_64 rng(4);
  const auto specs = SpecsFor({Adder4Circuit(), SmallExprCircuit(), Adder4Circuit()}, rng);
  BundleOptions opt;
  opt.seed = SeedFromU64(4);
  const auto b = CreateBundle(specs, 0, opt);
  for (const auto& s : b.scenarios) EXPECT_EQ(s.circuit.gate_count(), Adder4Circuit().gate_count());
  EXPECT_EQ(b.slots.size(), 2u);
  EXPECT_EQ(b.scenarios[0].slot, b.scenarios[2].slot);
  EXPECT_EQ(b.combined.wire_count(), b.slots[0].wire_count() + b.slots[1].wire_count());
  std::set<std::size_t> order(b.revelation_order.begin(), b.revelation_order.end());
  EXPECT_EQ(order, (std::set<std::size_t>{1, 2}));
}

TEST(CreateBundle, Errors) {
  std::mt19937_64 rng(5);
  BundleOptions opt;
  auto specs = SpecsFor({Adder4Circuit()}, rng);
  EXPECT_THROW(CreateBundle(specs, 0, opt), ClientError);
  specs = SpecsFor({Adder4Circuit(), Adder4Circuit()}, rng);
  EXPECT_THROW(CreateBundle(specs, 2, opt), ClientError);
  specs[1].inputs.pop_back();
  EXPECT_THROW(CreateBundle(specs, 0, opt), ClientError);
  specs = SpecsFor({Adder4Circuit(), Adder4Circuit()}, rng);
  opt.pad_to = 3;
  EXPECT_THROW(CreateBundle(specs, 0, opt), ClientError);
}

TEST(Embed, LanesCarryInputsAndNoiseElsewhere) {
  std::mt19937_64 rng(6);
  const auto specs = SpecsFor({Multiplier8Circuit(), Comparator8Circuit(), NoiseLevelCheckCircuit(),
                               ColorBalanceCheckCircuit()},
                              rng);
  BundleOptions opt;
  opt.height = opt.width = 256;
  opt.lanes_per_scenario = 16;
  opt.seed = SeedFromU64(6);
  auto b = CreateBundle(specs, 1, opt);
  ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(7), 20));
  const auto planes = Embed(b, Covers(256, 256), SeedFromU64(8));
  EXPECT_EQ(planes.size(), b.plane_count());
  std::set<std::size_t> secret;
  for (std::size_t j = 0; j < b.scenarios.size(); ++j) {
    const auto& s = b.scenarios[j];
    for (std::size_t p : s.lanes) {
      secret.insert(p);
      for (std::size_t i = 0; i < s.inputs.size(); ++i) {
        ASSERT_EQ(planes[b.PlaneFor(j, s.circuit.inputs()[i])][p] & 1, s.inputs[i]);
      }
    }
  }
  EXPECT_EQ(secret.size(), 64u);
  EXPECT_NEAR(double(secret.size()) / b.coordinate_count(), 0.000326, 0.000001);
  // Pooled over the first 40 planes, excluding lanes.
  double ones = 0, count = 0;
  for (std::size_t w = 0; w < 40; ++w) {
    for (std::size_t p = 0; p < planes[w].size(); ++p) {
      if (secret.count(p)) continue;
      ones += planes[w][p] & 1;
      ++count;
    }
  }
  EXPECT_NEAR(ones / count, 0.5, 3 * std::sqrt(0.25 / count));
}

TEST(Embed, DeterministicAndChecked) {
  std::mt19937_64 rng(9);
  const auto specs = SpecsFor({Adder4Circuit(), Threshold3Circuit()}, rng);
  BundleOptions opt;
  opt.seed = SeedFromU64(9);
  const auto b = CreateBundle(specs, 0, opt);
  EXPECT_EQ(Embed(b, Covers(64, 64), SeedFromU64(1)), Embed(b, Covers(64, 64), SeedFromU64(1)));
  EXPECT_NE(Embed(b, Covers(64, 64), SeedFromU64(1)), Embed(b, Covers(64, 64), SeedFromU64(2)));
  EXPECT_THROW(Embed(b, Covers(64, 32), SeedFromU64(1)), ClientError);
  EXPECT_THROW(Embed(b, {}, SeedFromU64(1)), ClientError);
}

TEST(Pipeline, AdderNinePlusSeven) {
  Circuit adder = Adder4Circuit();
  std::vector<ScenarioSpec> specs = {
      {"sum", adder, BitsFromUint(9 | 7 << 4, 8), "adds two nibbles"},
      {"decoy", SmallExprCircuit(), BitVector{1, 0, 1}, "a small predicate"}};
  BundleOptions opt;
  opt.seed = SeedFromU64(10);
  auto b = CreateBundle(specs, 0, opt);
  ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(11), 8));
  RunPipeline(b, 12);
  EXPECT_EQ(BitsToUint(b.scenarios[0].outputs[0]), 16u);
}

TEST(Pipeline, IdentitySubcircuitAndTwoLanes) {
  Circuit id("identity");
  for (int i = 0; i < 4; ++i) {
    const auto w = id.AddWire(WireKind::kInput);
    id.AddInput(w);
    id.AddOutput(w);
  }
  std::vector<ScenarioSpec> specs = {{"id", id, BitVector{1, 0, 1, 1}, ""},
                                     {"id2", id, BitVector{0, 1, 1, 0}, ""}};
  BundleOptions opt;
  opt.lanes_per_scenario = 2;
  opt.seed = SeedFromU64(13);
  auto b = CreateBundle(specs, 1, opt);
  RunPipeline(b, 14);
  for (std::size_t j = 0; j < 2; ++j) {
    ASSERT_EQ(b.scenarios[j].outputs.size(), 2u);
    EXPECT_EQ(b.scenarios[j].outputs[0], b.scenarios[j].inputs);
    EXPECT_EQ(b.scenarios[j].outputs[1], b.scenarios[j].inputs);
  }
}

// extract . evaluate . embed == simulate, for every catalog circuit and 100
// seeds each, with and without obfuscation and under both ancilla fills.
TEST(Pipeline, CorrectForCatalogCircuits) {
  const auto catalog = StandardCircuits();
  for (const auto& entry : catalog) {
    SCOPED_TRACE(entry.name);
    const auto& oracle = CatalogOracles().at(entry.name);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed);
      const Circuit& other = catalog[(seed + 1) % catalog.size()].circuit;
      auto specs = SpecsFor({entry.circuit, other, entry.circuit}, rng);
      BundleOptions opt;
      opt.height = opt.width = 24;
      opt.lanes_per_scenario = 1 + seed % 3;
      opt.seed = SeedFromU64(seed);
      auto b = CreateBundle(specs, seed % 3, opt);
      if (seed % 2 == 0) ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(seed + 1000), seed % 7));
      RunPipeline(b, seed, seed % 4 == 3 ? AncillaFill::kAllCoordinates : AncillaFill::kLanes);
      for (std::size_t j = 0; j < b.scenarios.size(); ++j) {
        const auto& s = b.scenarios[j];
        for (const auto& y : s.outputs) ASSERT_EQ(y, Simulate(s.circuit, s.inputs)) << seed;
      }
      for (std::size_t j : {0u, 2u}) {
        const auto& s = b.scenarios[j];
        ASSERT_EQ(BitsToUint(s.outputs[0]), oracle(BitsToUint(s.inputs)));
      }
    }
  }
}

TEST(Coercion, RevealsDecoysThenClaims) {
  std::mt19937_64 rng(15);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto specs = SpecsFor({SmallExprCircuit(), SmallExprCircuit(), Threshold3Circuit(),
                                 Adder4Circuit()},
                                rng);
    BundleOptions opt;
    opt.seed = SeedFromU64(seed);
    const std::size_t real = seed % 4;
    auto b = CreateBundle(specs, real, opt);
    const auto planes = RunPipeline(b, seed);
    std::set<std::string> seen;
    for (int round = 0; round < 3; ++round) {
      auto r = RevealNext(b);
      ASSERT_TRUE(std::holds_alternative<Revelation>(r));
      const auto& rev = std::get<Revelation>(r);
      EXPECT_NE(rev.scenario_id, b.scenarios[real].id);
      EXPECT_TRUE(seen.insert(rev.scenario_id).second);
      const auto v = VerifyRevelation(rev, planes);
      EXPECT_TRUE(v.ok) << v.reason;
    }
    auto last = RevealNext(b);
    ASSERT_TRUE(std::holds_alternative<TerminalClaim>(last));
    EXPECT_EQ(std::get<TerminalClaim>(last).rounds, 3u);
    EXPECT_TRUE(std::holds_alternative<TerminalClaim>(RevealNext(b)));
  }
}

TEST(Coercion, SmallerBudget) {
  std::mt19937_64 rng(16);
  auto b = CreateBundle(SpecsFor({Adder4Circuit(), Adder4Circuit(), Adder4Circuit()}, rng), 0,
                        BundleOptions{});
  b.coercion.budget = 1;
  EXPECT_TRUE(std::holds_alternative<Revelation>(RevealNext(b)));
  EXPECT_TRUE(std::holds_alternative<TerminalClaim>(RevealNext(b)));
  b.coercion = {};
  EXPECT_TRUE(std::holds_alternative<TerminalClaim>(RevealNext(b)));
}

TEST(Verify, DetectsInconsistencies) {
  std::mt19937_64 rng(17);
  auto b = CreateBundle(SpecsFor({Adder4Circuit(), Multiplier8Circuit()}, rng), 1,
                        BundleOptions{64, 64, 1, std::nullopt, SeedFromU64(17)});
  ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(18), 5));
  const auto embedded = Embed(b, Covers(64, 64), SeedFromU64(19));
  auto computed = embedded;
  Evaluate(b.evaluated, computed);
  Extract(b, computed);
  const Revelation honest = MakeRevelation(b, 0);
  EXPECT_TRUE(VerifyRevelation(honest, computed, embedded).ok);

  Revelation flipped = honest;
  flipped.inputs[0] ^= 1;
  EXPECT_FALSE(VerifyRevelation(flipped, computed).ok);

  // Tampering with one output plane at the lane.
  auto tampered = computed;
  tampered[honest.binding[honest.circuit.outputs()[2].wire]][honest.lanes[0]] ^= 1;
  EXPECT_FALSE(VerifyRevelation(honest, tampered).ok);

  // Lanes pointed at noise: a 5-output circuit matches by chance with
  // probability 1/32.
  int accepted = 0;
  constexpr int kTrials = 2000;
  for (int i = 0; i < kTrials; ++i) {
    Revelation moved = honest;
    moved.lanes = {std::size_t(rng() % computed[0].size())};
    if (moved.lanes[0] == honest.lanes[0]) continue;
    accepted += VerifyRevelation(moved, computed).ok;
  }
  const double p = 1.0 / 32;
  EXPECT_NEAR(accepted, kTrials * p, 4 * std::sqrt(kTrials * p * (1 - p)));
}

TEST(Verify, NoiseLanesOnOneBitOutput) {
  std::mt19937_64 rng(20);
  auto b = CreateBundle(SpecsFor({Comparator8Circuit(), BrightnessCheckCircuit()}, rng), 0,
                        BundleOptions{64, 64, 1, std::nullopt, SeedFromU64(20)});
  const auto computed = RunPipeline(b, 21);
  const Revelation honest = MakeRevelation(b, 1);
  int accepted = 0;
  constexpr int kTrials = 2000;
  for (int i = 0; i < kTrials; ++i) {
    Revelation moved = honest;
    moved.lanes = {std::size_t(rng() % computed[0].size())};
    accepted += VerifyRevelation(moved, computed).ok;
  }
  EXPECT_NEAR(accepted, kTrials / 2.0, 4 * std::sqrt(kTrials / 4.0));
}

TEST(LabelObliviousness, PermutedBookkeepingLeavesPlanesUnchanged) {
  std::mt19937_64 rng(22);
  auto b = CreateBundle(SpecsFor({Adder4Circuit(), SmallExprCircuit(), Threshold3Circuit()}, rng), 0,
                        BundleOptions{32, 32, 1, std::nullopt, SeedFromU64(22)});
  ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(23), 6));
  const auto embedded = Embed(b, Covers(32, 32), SeedFromU64(24));
  ScenarioBundle relabeled = b;
  std::rotate(relabeled.scenarios.begin(), relabeled.scenarios.begin() + 1, relabeled.scenarios.end());
  for (auto& s : relabeled.scenarios) s.narrative = "relabeled " + s.id;
  relabeled.real_index = 2;
  relabeled.revelation_order = {0, 1};
  auto a = embedded, c = embedded;
  Evaluate(b.evaluated, a);
  Evaluate(relabeled.evaluated, c);
  EXPECT_EQ(a, c);
  // The relabeled bundle embeds the same planes: placement ignores labels.
  EXPECT_EQ(Embed(relabeled, Covers(32, 32), SeedFromU64(24)), embedded);
}

TEST(BundleIo, RoundTripAndPermissions) {
  std::mt19937_64 rng(25);
  auto b = CreateBundle(SpecsFor({Adder4Circuit(), SmallExprCircuit(), Adder4Circuit()}, rng), 2,
                        BundleOptions{40, 48, 2, 30, SeedFromU64(25)});
  ObfuscateBundle(b, ObfuscationParams::All(SeedFromU64(26), 4));
  const auto planes = RunPipeline(b, 27);
  RevealNext(b);
  const auto path = std::filesystem::temp_directory_path() / "pdfhc_bundle_test.json";
  std::filesystem::remove(path);
  SaveBundle(b, path);
  struct stat st {};
  ASSERT_EQ(::stat(path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);
  const auto back = LoadBundle(path);
  EXPECT_EQ(BundleToJson(back), BundleToJson(b));
  EXPECT_EQ(back.combined, b.combined);
  EXPECT_EQ(ReadOutputs(back, planes), ReadOutputs(b, planes));
  std::filesystem::remove(path);

  const Revelation rev = MakeRevelation(b, 1);
  const Revelation rev2 = RevelationFromJson(RevelationToJson(rev, 48), 40, 48);
  EXPECT_EQ(rev2.lanes, rev.lanes);
  EXPECT_EQ(rev2.binding, rev.binding);
  EXPECT_EQ(rev2.circuit, rev.circuit);
  EXPECT_TRUE(VerifyRevelation(rev2, planes).ok);

  EXPECT_THROW(BundleFromJson(nlohmann::json::object()), ClientError);
  auto doc = BundleToJson(b);
  doc["real_index"] = 9;
  EXPECT_THROW(BundleFromJson(doc), ClientError);
}

}  // namespace
}  // namespace pdfhc
