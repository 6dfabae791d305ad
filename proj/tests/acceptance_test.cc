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


// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 when any
// criterion fails. Seeds are fixed so a rerun reproduces every number except
// timings.

#include <boost/math/distributions/binomial.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "pdfhc/circuit/catalog.h"
#include "pdfhc/client/scheme.h"
#include "pdfhc/evaluator/evaluator.h"
#include "pdfhc/obfuscation/obfuscate.h"
#include "pdfhc/pipeline/bench.h"
#include "pdfhc/pipeline/commands.h"
#include "pdfhc/pipeline/config.h"
#include "pdfhc/security/bounds.h"
#include "pdfhc/security/games.h"

namespace pdfhc {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check without stopping the criterion.
  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double Seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BitVector RandomBits(std::mt19937_64& rng, std::size_t n) {
  BitVector bits(n);
  for (auto& b : bits) b = std::uint8_t(rng() & 1);
  return bits;
}

std::vector<ImagePlane> Covers(std::size_t h, std::size_t w) {
  return {SyntheticCover(h, w, 1), SyntheticCover(h, w, 2)};
}

// One complete embed -> evaluate -> extract run with a decoy next to the
// real scenario; returns the real scenario's extracted output.
BitVector RunTwoScenario(const Circuit& real, const BitVector& x, const Circuit& decoy,
                         const BitVector& xd, std::uint64_t seed) {
  BundleOptions bo;
  bo.height = bo.width = 64;
  bo.seed = SeedFromU64(seed);
  auto bundle = CreateBundle({{"real", real, x, ""}, {"decoy", decoy, xd, ""}}, 0, bo);
  ObfuscateBundle(bundle, ObfuscationParams::All(DeriveSeed(bo.seed, "obf"), 16));
  auto planes = Embed(bundle, Covers(64, 64), DeriveSeed(bo.seed, "noise"));
  Evaluate(bundle.evaluated, planes);
  Extract(bundle, planes);
  return bundle.scenarios[0].outputs.at(0);
}

std::vector<ImagePlane> NoisePlanes(std::size_t count, std::size_t h, std::size_t w, std::uint64_t seed) {
  std::vector<ImagePlane> planes;
  NoiseSource src(SeedFromU64(seed));
  for (std::size_t i = 0; i < count; ++i) {
    ImagePlane p = SyntheticCover(h, w, seed + i);
    FillNoise(p, src);
    planes.push_back(std::move(p));
  }
  return planes;
}

Circuit RandomCircuit(std::mt19937_64& rng, std::size_t wires, std::size_t gates) {
  Circuit c("random");
  for (std::size_t w = 0; w < wires; ++w) {
    const auto idx = c.AddWire(w < 4 ? WireKind::kInput : WireKind::kAncillaZero);
    if (w < 4) c.AddInput(idx);
  }
  for (std::size_t g = 0; g < gates; ++g) {
    WireIndex a, b, d;
    do {
      a = WireIndex(rng() % wires);
      b = WireIndex(rng() % wires);
      d = WireIndex(rng() % wires);
    } while (a == b || b == d || a == d);
    c.AddGate(a, b, d);
  }
  c.AddOutput(0);
  return c;
}

void C1Adder(Outcome& o) {
  const auto t0 = Clock::now();
  const Circuit adder = Adder4Circuit();
  const Circuit decoy = BrightnessCheckCircuit();
  std::mt19937_64 rng(101);
  std::size_t ok = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const BitVector x = OperandsToBits(std::vector<std::uint64_t>{a, b}, {}, 8);
      const auto y = RunTwoScenario(adder, x, decoy, RandomBits(rng, 16), 1000 + a * 16 + b);
      ok += y.size() == 5 && BitsToUint(y) == a + b;
    }
  }
  const double s = Seconds(t0);
  o.Check(ok == 256, "exact sums");
  o.Check(s < 120, "runtime < 2 min");
  o.detail << ok << "/256 sums exact, " << s << " s";
}

void C2Multiplier(Outcome& o) {
  const auto t0 = Clock::now();
  const Circuit mul = Multiplier8Circuit();
  const Circuit decoy = ColorBalanceCheckCircuit();
  std::mt19937_64 rng(202);
  std::size_t ok = 0;
  for (int i = 0; i < 256; ++i) {
    const std::uint64_t a = rng() % 256, b = rng() % 256;
    const BitVector x = OperandsToBits(std::vector<std::uint64_t>{a, b}, {}, 16);
    const auto y = RunTwoScenario(mul, x, decoy, RandomBits(rng, 16), 5000 + i);
    ok += BitsToUint(y) == a * b;
  }
  const double s = Seconds(t0);
  o.Check(ok == 256, "exact products");
  o.Check(s < 300, "runtime < 5 min");
  o.detail << ok << "/256 products exact, " << s << " s";
}

void C3Fredkin(Outcome& o) {
  int table = 0, inv = 0, weight = 0;
  for (int v = 0; v < 8; ++v) {
    const std::uint8_t c = v & 1, x = (v >> 1) & 1, y = (v >> 2) & 1;
    const auto r = FredkinApply(c, x, y);
    // Controlled swap written out by cases.
    const std::array<std::uint8_t, 3> expect = c ? std::array<std::uint8_t, 3>{c, y, x}
                                                 : std::array<std::uint8_t, 3>{c, x, y};
    table += r == expect;
    inv += FredkinApply(r[0], r[1], r[2]) == std::array<std::uint8_t, 3>{c, x, y};
    weight += (r[0] + r[1] + r[2]) == (c + x + y);
  }
  o.Check(table == 8 && inv == 8 && weight == 8, "gate laws");
  std::mt19937_64 rng(303);
  std::size_t circuits_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = RandomCircuit(rng, 6 + rng() % 10, 1 + rng() % 50);
    auto planes = NoisePlanes(c.wire_count(), 64, 64, 400 + trial);
    std::vector<int> before(planes[0].size(), 0);
    for (const auto& p : planes) {
      for (std::size_t i = 0; i < p.size(); ++i) before[i] += p[i] & 1;
    }
    Evaluate(c, planes);
    bool same = true;
    for (std::size_t i = 0; i < before.size() && same; ++i) {
      int after = 0;
      for (const auto& p : planes) after += p[i] & 1;
      same = after == before[i];
    }
    circuits_ok += same;
  }
  o.Check(circuits_ok == 100, "per-coordinate weight");
  o.detail << "truth table " << table << "/8, involution " << inv << "/8, weight " << weight
           << "/8, weight conserved on " << circuits_ok << "/100 random circuits over 64x64";
}

// Per-plane 3-sigma excursions are bounded by the 99.9% binomial quantile
// (a few chance excursions are expected across hundreds of planes); the
// multiset check is exact.
void C4Distribution(Outcome& o) {
  std::size_t planes_seen = 0, excursions = 0, multiset_ok = 0, circuits = 0;
  double pooled_ones = 0, pooled_n = 0;
  for (const auto& entry : StandardCircuits()) {
    auto planes = NoisePlanes(entry.circuit.wire_count(), 64, 64, 600 + circuits);
    std::vector<int> before(planes[0].size(), 0);
    for (const auto& p : planes) {
      for (std::size_t i = 0; i < p.size(); ++i) before[i] += p[i] & 1;
    }
    Evaluate(entry.circuit, planes);
    const double n = double(planes[0].size());
    const double band = 3 * std::sqrt(0.25 / n);
    std::vector<int> after(planes[0].size(), 0);
    for (const auto& p : planes) {
      double ones = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        ones += p[i] & 1;
        after[i] += p[i] & 1;
      }
      ++planes_seen;
      excursions += std::fabs(ones / n - 0.5) > band;
      pooled_ones += ones;
      pooled_n += n;
    }
    multiset_ok += before == after;
    ++circuits;
  }
  const double tail = std::erfc(3 / std::sqrt(2.0));
  const double allowed = boost::math::quantile(boost::math::binomial(double(planes_seen), tail), 0.999);
  const double pooled = pooled_ones / pooled_n;
  o.Check(double(excursions) <= allowed, "excursion count");
  o.Check(std::fabs(pooled - 0.5) <= 3 * std::sqrt(0.25 / pooled_n), "pooled fraction");
  o.Check(multiset_ok == circuits, "multiset");
  o.detail << excursions << " of " << planes_seen << " planes outside the 3-sigma band (allowed "
           << allowed << "), pooled ones-fraction " << pooled << ", multiset conserved for "
           << multiset_ok << "/" << circuits << " circuits";
}

void C5Obfuscation(Outcome& o) {
  std::size_t runs = 0, ok_runs = 0;
  for (const auto& entry : StandardCircuits()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r = Obfuscate(entry.circuit, ObfuscationParams::All(SeedFromU64(seed), seed % 17));
      std::mt19937_64 rng(seed * 7919 + entry.circuit.gate_count());
      bool ok = true;
      for (int i = 0; i < 256 && ok; ++i) {
        const auto in = RandomBits(rng, entry.circuit.input_count());
        const auto a = SimulateState(entry.circuit, in);
        const auto b = SimulateState(r.circuit, in);
        for (WireIndex w = 0; w < entry.circuit.wire_count() && ok; ++w) ok = a[w] == b[r.map(w)];
        ok = ok && Simulate(entry.circuit, in) == Simulate(r.circuit, in);
      }
      ++runs;
      ok_runs += ok;
    }
  }
  o.Check(ok_runs == runs, "equivalence");
  o.detail << ok_runs << "/" << runs << " (circuit, seed) pairs equal through the wire map on 256 inputs";
}

GameConfig BaseGame(std::uint64_t seed) {
  GameConfig cfg;
  cfg.height = cfg.width = 64;
  cfg.scenarios = 4;
  cfg.lanes_per_scenario = 1;
  cfg.seed = SeedFromU64(seed);
  return cfg;
}

void C6Privacy(Outcome& o) {
  const auto t0 = Clock::now();
  auto cfg = BaseGame(6);
  cfg.trials = 1000;
  const double baseline = 4.0 / (64 * 64 * 3);
  for (const std::string name : {"random-guess", "chi-square"}) {
    const auto r = RunPrivacyGame(cfg, *MakeAdversary(name));
    o.Check(r.advantage_ci.Contains(0.0), name + " advantage CI contains 0");
    o.Check(std::fabs(r.baseline - baseline) < 1e-15, name + " baseline");
    o.Check(r.rate_ci.Contains(r.baseline), name + " rate CI contains baseline");
    o.detail << name << ": " << r.successes << "/" << r.trials << " hits, advantage CI ["
             << r.advantage_ci.lo << ", " << r.advantage_ci.hi << "]; ";
  }
  const double s = Seconds(t0);
  o.Check(s < 600, "runtime < 10 min");
  o.detail << "baseline L*rho/n = " << baseline << ", " << s << " s";
}

void C7Coercion(Outcome& o) {
  const auto t0 = Clock::now();
  const auto adv = MakeAdversary("chi-square");
  for (std::size_t t = 1; t <= 3; ++t) {
    auto cfg = BaseGame(70 + t);
    cfg.trials = 200;
    cfg.rounds = t;
    const auto r = RunCoercionGame(cfg, *adv);
    // Verification failures throw, so reaching here means every one held.
    o.Check(r.existence.verifications + r.intent.verifications >= 2 * 200 * t, "verification count");
    o.Check(r.existence.advantage_ci.Contains(0.0), "existence CI at t=" + std::to_string(t));
    o.Check(std::fabs(r.intent.baseline - 1.0 / double(4 - t)) < 1e-12, "intent baseline");
    o.Check(r.intent.advantage_ci.Contains(0.0), "intent CI at t=" + std::to_string(t));
    o.detail << "t=" << t << ": " << r.existence.verifications + r.intent.verifications
             << " verified, existence adv " << r.existence.advantage << " ["
             << r.existence.advantage_ci.lo << ", " << r.existence.advantage_ci.hi << "], intent rate "
             << r.intent.rate << " vs " << r.intent.baseline << " adv CI [" << r.intent.advantage_ci.lo
             << ", " << r.intent.advantage_ci.hi << "]; ";
  }
  const double s = Seconds(t0);
  o.Check(s < 900, "runtime < 15 min");
  o.detail << s << " s";
}

void C8Exchangeability(Outcome& o) {
  auto cfg = BaseGame(8);
  cfg.trials = 200;
  const auto r = RunExchangeabilityTest(cfg);
  o.Check(r.auc >= 0.45 && r.auc <= 0.55, "AUC in [0.45, 0.55]");
  o.Check(r.label_oblivious, "label-oblivious");
  o.detail << "AUC " << r.auc << " over " << 2 * cfg.trials << " samples, lane-reading sanity AUC "
           << r.sanity_auc << ", label-oblivious " << (r.label_oblivious ? "yes" : "no");
}

void C9Bounds(Outcome& o) {
  double worst = 0;
  for (int n = 2; n <= 10; ++n) {
    for (double p : {0.5, 0.25, 0.9}) {
      double fact = 1;
      for (int k = 2; k < n; ++k) fact *= k;
      const double direct = std::log10((1 - p * p) / (p * fact));
      const double got = EpsilonSingleLog(n, p);
      worst = std::max(worst, std::fabs(got - direct) / std::max(1.0, std::fabs(direct)));
    }
  }
  o.Check(worst <= 1e-10, "small-n arithmetic");
  const double big = EpsilonSingleLog(49152, 0.5);
  SecurityParams sp;
  sp.n = 49152;
  sp.L = 4;
  const double priv = AdvPrivBoundLog(sp);
  o.Check(big < -38.5 && priv < -38.5, "n = 49152 below 2^-128");
  bool delta_ok = true;
  for (std::size_t d : {17u, 81u, 289u}) {
    const std::vector<std::size_t> depths{d - 1, d};
    delta_ok = delta_ok && DeltaCircuit(depths) == 1.0 / double(d);
    const auto pool = MatchedDepthPool(depths);
    delta_ok = delta_ok && DeltaCircuit(std::span<const Circuit>(pool)) == 1.0 / double(d);
  }
  o.Check(delta_ok, "delta values");
  o.detail << "max relative error " << worst << " for n=2..10, log10 eps(49152) = " << big
           << ", log10 AdvPriv(L=4) = " << priv << ", delta 1/17, 1/81, 1/289 "
           << (delta_ok ? "exact" : "WRONG");
}

void C10Quality(Outcome& o) {
  const ImagePlane cover = LoadPng(fs::path(PDFHC_REPO_DATA_DIR) / "test_cover_256.png");
  ImagePlane noisy = cover;
  NoiseSource noise(SeedFromU64(10));
  FillNoise(noisy, noise);
  const auto q = MeasureQuality(cover, noisy);
  o.Check(q.psnr >= 50.6 && q.psnr <= 51.6, "PSNR window");
  o.Check(q.ssim > 0.99, "SSIM");
  o.detail << "PSNR " << q.psnr << " dB, SSIM " << q.ssim;
}

void C11Scaling(Outcome& o) {
  BenchMatrix mx;
  mx.seed = SeedFromU64(11);
  mx.measure_png = false;
  const auto r = RunBench(mx);
  o.Check(r.min_r2() >= 0.98, "R^2 >= 0.98");
  o.Check(r.scenario_spread < 0.15, "L spread < 15%");
  o.Check(r.speedup() && *r.speedup() >= 20, "speedup >= 20x");
  o.detail << "R^2 vs m:";
  for (const auto& [side, f] : r.fit_vs_gates) o.detail << " " << side << "^2=" << f.r2;
  o.detail << "; R^2 vs pixels:";
  for (const auto& [m, f] : r.fit_vs_pixels) o.detail << " m" << m << "=" << f.r2;
  o.detail << "; L spread " << 100 * r.scenario_spread << "%; naive " << r.naive_ms.value_or(0)
           << " ms vs " << r.vectorized_ms.value_or(0) << " ms = " << r.speedup().value_or(0) << "x";
}

void C12Medical(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / "pdfhc_acceptance_medical";
  fs::remove_all(dir);
  auto cfg = LoadPipelineConfig(fs::path(PDFHC_REPO_DATA_DIR) / "configs/medical.json");
  cfg.output_dir = dir / "out";
  o.Check(cfg.scenarios.size() == 4 && cfg.height == 256 && cfg.width == 256, "L=4 at 256x256");
  const auto& real = cfg.scenarios[cfg.real_index];
  o.Check(real.circuit.input_count() == 16, "ell = 16");
  EvalOptions eo;
  eo.transcript = true;
  const auto art = CmdPipeline(cfg, eo);
  const auto& rs = art.bundle.scenarios[art.bundle.real_index];
  const auto& oracle = testing::CatalogOracles().at("comparator8");
  o.Check(BitsToUint(rs.outputs.at(0)) == oracle(BitsToUint(real.inputs)), "diagnostic bit");
  const std::size_t m = art.bundle.evaluated.gate_count();
  o.Check(art.transcript && art.transcript->image_count() == 2 * m, "transcript 2m");
  const double fraction = double(4 * cfg.lanes_per_scenario) / double(cfg.coordinate_count());
  const auto co = CmdCoerce(art.bundle_file, 3, art.computed_dir, art.embedded_dir, dir / "rev");
  o.Check(co.rounds.size() == 3 && co.all_verified, "three verified rounds");
  o.Check(co.claim.has_value(), "terminal claim");
  o.detail << "diagnostic bit " << BitsToUint(rs.outputs.at(0)) << ", m=" << m << ", transcript "
           << (art.transcript ? art.transcript->image_count() : 0) << " images ("
           << (art.transcript ? art.transcript->megabytes() : 0) << " MB), secret fraction L*rho/n = "
           << fraction << ", " << co.rounds.size() << " rounds verified: " << (co.all_verified ? "yes" : "no");
}

}  // namespace
}  // namespace pdfhc

int main() {
  using namespace pdfhc;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"adder end-to-end", C1Adder},
      {"multiplier end-to-end", C2Multiplier},
      {"Fredkin laws", C3Fredkin},
      {"distribution preservation", C4Distribution},
      {"obfuscation equivalence", C5Obfuscation},
      {"privacy game", C6Privacy},
      {"coercion game", C7Coercion},
      {"exchangeability", C8Exchangeability},
      {"analytic bounds", C9Bounds},
      {"image quality", C10Quality},
      {"scaling laws", C11Scaling},
      {"medical use case", C12Medical},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
