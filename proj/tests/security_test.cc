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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pdfhc/obfuscation/obfuscate.h"
#include "pdfhc/security/bounds.h"
#include "pdfhc/security/games.h"

namespace pdfhc {
namespace {

double DirectLog(int n, double p) {
  double fact = 1;
  for (int k = 2; k < n; ++k) fact *= k;
  return std::log10((1 - p * p) / (p * fact));
}

TEST(Bounds, EpsilonExamples) {
  EXPECT_NEAR(EpsilonSingleLog(2, 0.5), std::log10(1.5), 1e-12);
  EXPECT_NEAR(EpsilonSingleLog(5, 0.5), std::log10(1.5 / 24), 1e-12);
  EXPECT_LT(EpsilonSingleLog(49152, 0.5), -38.5);
}

TEST(Bounds, EpsilonMatchesDirectArithmetic) {
  for (double p : {0.5, 0.25, 0.9}) {
    for (int n = 2; n <= 10; ++n) {
      const double want = DirectLog(n, p);
      const double got = EpsilonSingleLog(n, p);
      EXPECT_LE(std::abs(got - want), 1e-10 * std::max(1.0, std::abs(want))) << n << " " << p;
    }
  }
}

TEST(Bounds, DomainErrors) {
  EXPECT_THROW(EpsilonSingleLog(1, 0.5), std::invalid_argument);
  EXPECT_THROW(EpsilonSingleLog(10, 0.0), std::invalid_argument);
  EXPECT_THROW(EpsilonSingleLog(10, 1.0), std::invalid_argument);
  SecurityParams p{.n = 12288, .L = 4, .t = 4};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  EXPECT_THROW(IntentBaseline(p), std::invalid_argument);
  p = {.n = 300, .L = 4};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {.n = 12288, .L = 4, .p_b = 1.5};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(Bounds, Monotone) {
  for (double n = 2; n < 5000; n = n * 1.7 + 1) {
    EXPECT_GT(EpsilonSingleLog(n, 0.5), EpsilonSingleLog(n + 1, 0.5));
  }
  // Each round removes ell positions from the factorial, which outweighs the
  // shrinking (L - t) factor: the bound grows with t.
  for (std::size_t n : {20u, 12288u, 196608u}) {
    SecurityParams p{.n = n, .L = 8, .ell = 1};
    for (std::size_t t = 0; t + 1 < p.L; ++t) {
      SecurityParams a = p, b = p;
      a.t = t;
      b.t = t + 1;
      EXPECT_LT(AdvExistBoundLog(a), AdvExistBoundLog(b)) << n << " " << t;
    }
  }
  SecurityParams a{.n = 196608, .L = 2, .ell = 3}, b = a;
  b.L = 4;
  EXPECT_NEAR(AdvPrivBoundLog(b) - AdvPrivBoundLog(a), std::log10(2.0), 1e-10);
}

TEST(Bounds, Compositions) {
  SecurityParams one{.n = 49152, .L = 1, .ell = 1};
  EXPECT_DOUBLE_EQ(AdvPrivBoundLog(one), EpsilonSingleLog(49152, 0.5));

  SecurityParams med{.n = 196608, .L = 4, .ell = 16};
  EXPECT_NEAR(AdvPrivBoundLog(med), std::log10(64.0) + EpsilonSingleLog(196608, 0.5), 1e-9);
  EXPECT_DOUBLE_EQ(AdvExistBoundLog(med), AdvPrivBoundLog(med));
  med.t = 1;
  EXPECT_NEAR(AdvExistBoundLog(med), std::log10(48.0) + EpsilonSingleLog(196592, 0.5), 1e-9);
  med.t = 3;
  EXPECT_NEAR(AdvExistBoundLog(med), std::log10(16.0) + EpsilonSingleLog(196608 - 48, 0.5), 1e-9);
}

TEST(Bounds, IntentBaselines) {
  EXPECT_DOUBLE_EQ(IntentBaseline({.n = 12288, .L = 4, .t = 1}), 1.0 / 3);
  EXPECT_DOUBLE_EQ(IntentBaseline({.n = 12288, .L = 2, .t = 0}), 0.5);
  EXPECT_DOUBLE_EQ(IntentBaseline({.n = 12288, .L = 8, .t = 3}), 0.2);
}

TEST(Intervals, WilsonKnownValues) {
  const auto a = WilsonInterval(0, 10);
  EXPECT_DOUBLE_EQ(a.lo, 0.0);
  EXPECT_NEAR(a.hi, 0.2775, 1e-4);
  const auto b = WilsonInterval(81, 263);
  EXPECT_NEAR(b.lo, 0.2553, 1e-4);
  EXPECT_NEAR(b.hi, 0.3662, 1e-4);
  EXPECT_THROW(WilsonInterval(3, 2), std::invalid_argument);
}

TEST(Intervals, WilsonEndpointsExact) {
  for (std::size_t n : {1u, 7u, 200u, 1000u}) {
    EXPECT_EQ(WilsonInterval(n, n).hi, 1.0) << n;
    EXPECT_EQ(WilsonInterval(0, n).lo, 0.0) << n;
  }
}

TEST(Intervals, WilsonCoverage) {
  std::mt19937_64 rng(5);
  for (double p : {0.05, 0.3, 0.5}) {
    std::binomial_distribution<int> draw(200, p);
    int covered = 0;
    constexpr int kReps = 4000;
    for (int i = 0; i < kReps; ++i) {
      const int s = draw(rng);
      const auto ci = WilsonInterval(std::size_t(s), 200);
      EXPECT_TRUE(ci.Contains(s / 200.0));
      covered += ci.Contains(p);
    }
    // Nominal 95%; the Wilson interval stays within about a point of it.
    EXPECT_NEAR(double(covered) / kReps, 0.95, 0.02) << p;
  }
}

TEST(Intervals, NewcombeKnownValue) {
  // Newcombe's worked example: 56/70 vs 48/80.
  const auto ci = NewcombeInterval(56, 70, 48, 80);
  EXPECT_NEAR(ci.lo, 0.0524, 1e-4);
  EXPECT_NEAR(ci.hi, 0.3339, 1e-4);
}

TEST(Auc, Basics) {
  const std::vector<double> s{0.1, 0.2, 0.3, 0.4};
  EXPECT_DOUBLE_EQ(Auc(s, std::vector<int>{0, 0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(Auc(s, std::vector<int>{1, 1, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>{1, 1, 1, 1}, std::vector<int>{0, 1, 0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(Auc(s, std::vector<int>{0, 1, 0, 1}), 0.75);
  EXPECT_THROW(Auc(s, std::vector<int>{1, 1, 1, 1}), std::invalid_argument);
}

TEST(DepthPool, MatchedDepths) {
  const std::vector<std::size_t> d{16, 17, 80, 81};
  const auto pool = MatchedDepthPool(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(pool[i].Depth(), d[i]);
    EXPECT_EQ(pool[i].gate_count(), d[i]);
  }
  EXPECT_DOUBLE_EQ(DeltaCircuit(std::span<const Circuit>(pool.data(), 2)), 1.0 / 17);
}

GameConfig SmallConfig(std::size_t trials, std::uint64_t seed) {
  GameConfig c;
  c.trials = trials;
  c.seed = SeedFromU64(seed);
  return c;
}

TEST(PrivacyGame, RandomGuessMatchesBaseline) {
  auto cfg = SmallConfig(200, 11);
  const auto adv = MakeAdversary("random-guess");
  const auto r = RunPrivacyGame(cfg, *adv);
  EXPECT_EQ(r.trials, 200u);
  EXPECT_DOUBLE_EQ(r.baseline, 4.0 / 12288);
  EXPECT_TRUE(r.rate_ci.Contains(r.rate));
  EXPECT_TRUE(r.passed);
  ASSERT_TRUE(r.analytic_bound_log10);
  EXPECT_LT(*r.analytic_bound_log10, -1000);
}

TEST(PrivacyGame, DeterministicAcrossThreads) {
  auto cfg = SmallConfig(100, 12);
  const auto adv = MakeAdversary("chi-square");
  const auto a = RunPrivacyGame(cfg, *adv);
  cfg.threads = 3;
  const auto b = RunPrivacyGame(cfg, *adv);
  EXPECT_EQ(ReportCsvRow(a), ReportCsvRow(b));
}

TEST(PrivacyGame, AncillaPatternLeaksUnlessFilled) {
  auto cfg = SmallConfig(100, 13);
  const auto adv = MakeAdversary("ancilla-pattern");
  const auto leak = RunPrivacyGame(cfg, *adv);
  EXPECT_EQ(leak.successes, leak.trials);
  EXPECT_FALSE(leak.passed);
  cfg.ancilla_fill = AncillaFill::kAllCoordinates;
  const auto filled = RunPrivacyGame(cfg, *adv);
  EXPECT_TRUE(filled.passed);
  EXPECT_LT(filled.successes, 3u);
}

TEST(PrivacyGame, LsbScannersStayAtBaseline) {
  for (const char* name : {"global-bias", "chi-square"}) {
    const auto adv = MakeAdversary(name);
    const auto r = RunPrivacyGame(SmallConfig(100, 14), *adv);
    EXPECT_TRUE(r.advantage_ci.Contains(0.0)) << name;
  }
}

// Under lane-only constants, dummy and ancilla gates swap deterministically
// at lanes, so the M' -> M'' change count singles them out.
TEST(PrivacyGame, ChangeCountScannerNeedsFilledAncillae) {
  auto cfg = SmallConfig(100, 14);
  const auto adv = MakeAdversary("pairwise-correlation");
  EXPECT_GT(RunPrivacyGame(cfg, *adv).advantage_ci.lo, 0.0);
  cfg.ancilla_fill = AncillaFill::kAllCoordinates;
  EXPECT_TRUE(RunPrivacyGame(cfg, *adv).passed);
}

TEST(CoercionGame, VerifiesEveryRevelation) {
  auto cfg = SmallConfig(100, 21);
  cfg.rounds = 2;
  const auto adv = MakeAdversary("chi-square");
  const auto r = RunCoercionGame(cfg, *adv);
  EXPECT_EQ(r.existence.verifications, 200u);
  EXPECT_EQ(r.intent.verifications, 200u);
  EXPECT_DOUBLE_EQ(r.intent.baseline, 0.5);
  EXPECT_TRUE(r.existence.advantage_ci.Contains(r.existence.advantage));
}

TEST(CoercionGame, AncillaPatternDistinguishesExistence) {
  auto cfg = SmallConfig(100, 22);
  const auto adv = MakeAdversary("ancilla-pattern");
  const auto leak = RunCoercionGame(cfg, *adv);
  EXPECT_DOUBLE_EQ(leak.existence.advantage, 1.0);
  EXPECT_GT(leak.existence.advantage_ci.lo, 0.8);
  cfg.ancilla_fill = AncillaFill::kAllCoordinates;
  const auto filled = RunCoercionGame(cfg, *adv);
  EXPECT_TRUE(filled.existence.advantage_ci.Contains(0.0));
}

TEST(CoercionGame, DepthOracleBoundedByDelta) {
  auto cfg = SmallConfig(100, 23);
  const std::vector<std::size_t> depths{16, 17};
  cfg.pool = MatchedDepthPool(depths);
  const auto adv = MakeAdversary("depth-oracle");
  const auto r = RunCoercionGame(cfg, *adv, true);
  EXPECT_LE(r.intent.advantage_ci.lo, 1.0 / 17);
  EXPECT_TRUE(r.intent.passed);
}

TEST(Exchangeability, SanityAndStructure) {
  auto cfg = SmallConfig(100, 31);
  const auto r = RunExchangeabilityTest(cfg);
  EXPECT_TRUE(r.label_oblivious);
  EXPECT_GT(r.sanity_auc, 0.9);
  EXPECT_GT(r.auc, 0.3);
  EXPECT_LT(r.auc, 0.7);
  EXPECT_EQ(r.report.trials, 200u);
}

TEST(Reports, CsvShape) {
  GameReport r;
  r.game = "privacy";
  r.adversary = "random-guess";
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  EXPECT_EQ(count(ReportCsvHeader()), count(ReportCsvRow(r)));
  const auto j = ReportToJson(r);
  EXPECT_TRUE(j["analytic_bound_log10"].is_null());
  EXPECT_EQ(j["verdict"], "fail");
}

TEST(Adversaries, Factory) {
  for (const auto& name : AdversaryNames()) EXPECT_EQ(MakeAdversary(name)->name(), name);
  EXPECT_THROW(MakeAdversary("oracle"), std::invalid_argument);
  auto cfg = SmallConfig(50, 1);
  const auto adv = MakeAdversary("random-guess");
  EXPECT_THROW(RunPrivacyGame(cfg, *adv), std::invalid_argument);
}

}  // namespace
}  // namespace pdfhc
