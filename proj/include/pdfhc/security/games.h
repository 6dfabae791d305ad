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

#ifndef PDFHC_SECURITY_GAMES_H_
#define PDFHC_SECURITY_GAMES_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfhc/client/scheme.h"
#include "pdfhc/security/bounds.h"

namespace pdfhc {

// A revealed decoy failed verification: the scheme produced a wrong result.
class CorrectnessViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What Eve holds: the embedded planes M', the evaluated circuit, the computed
// planes M'', and whatever Alice has revealed so far.
struct AdversaryView {
  const Circuit* circuit = nullptr;
  std::span<const ImagePlane> embedded;
  std::span<const ImagePlane> computed;
  std::span<const Revelation> revelations;
};

// Intent arm input. `oracle_circuits`, when present, are the unpadded
// circuits of the candidates: information outside the game, used by the
// depth-oracle strategy.
struct IntentView {
  std::size_t scenario_count = 0;
  std::vector<std::string> candidates;  // unrevealed scenario ids
  std::vector<Circuit> oracle_circuits;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  // Privacy game: a coordinate (linear index) believed to be a lane.
  virtual std::size_t GuessPosition(const AdversaryView& view, SecureRng& rng) const;
  // Existence game: 1 for "unrevealed scenarios remain".
  virtual bool Distinguish(const AdversaryView& view, SecureRng& rng) const;
  // Intent game: index into view.candidates.
  virtual std::size_t GuessIntent(const IntentView& view, SecureRng& rng) const;
};

// random-guess, global-bias, chi-square, pairwise-correlation, depth-oracle,
// ancilla-pattern.
std::unique_ptr<Adversary> MakeAdversary(const std::string& name);
std::vector<std::string> AdversaryNames();

struct GameReport {
  std::string game;
  std::string adversary;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  double baseline = 0;
  double advantage = 0;           // rate - baseline, or a difference of rates
  Interval rate_ci;               // Wilson 95%
  Interval advantage_ci;
  std::optional<double> analytic_bound_log10;
  std::optional<double> alternate_baseline;  // L * ell / n for the privacy game
  std::size_t verifications = 0;
  bool passed = false;
  std::string notes;
};

nlohmann::json ReportToJson(const GameReport& report);
std::string ReportCsvHeader();
std::string ReportCsvRow(const GameReport& report);

struct GameConfig {
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t scenarios = 4;  // L
  std::size_t lanes_per_scenario = 1;
  std::size_t rounds = 1;  // t
  std::size_t trials = 1000;
  std::size_t dummy_gates = 16;
  AncillaFill ancilla_fill = AncillaFill::kLanes;
  Seed seed{};
  unsigned threads = 1;
  // Circuits assigned to scenarios round-robin. Defaults to the comparator
  // and the three decoy checks.
  std::vector<Circuit> pool;
};

// Per trial: fresh bundle, real index uniform, obfuscate, embed, evaluate;
// the adversary sees (M', C_obf, M'') and wins if its guess is a lane.
// Baseline L * rho / n.
GameReport RunPrivacyGame(const GameConfig& config, const Adversary& adversary);

struct CoercionReports {
  GameReport existence;
  GameReport intent;
};

// Existence arm: a fair coin picks Exp1 (all L scenarios embedded, t
// revealed) or Exp0 (only the t scenarios that get revealed are embedded,
// same combined circuit); the adversary outputs b'. The advantage is
// Pr[b' = 1 | Exp1] - Pr[b' = 1 | Exp0]. Intent arm: in an Exp1 world the
// adversary picks among the unrevealed ids; baseline 1 / (L - t). Every
// revelation is verified; a failure throws CorrectnessViolation.
CoercionReports RunCoercionGame(const GameConfig& config, const Adversary& adversary,
                                bool oracle_circuits = false);

struct ExchangeabilityResult {
  GameReport report;  // rate = AUC
  double auc = 0.5;
  double sanity_auc = 0.5;  // classifier that may read lanes
  bool label_oblivious = false;
};

// All scenarios run the same circuit on i.i.d. inputs. Class 0 samples are
// output vectors in scenario order; class 1 samples come from fresh runs with
// scenarios 1 and 2 (two decoys) swapped. A cross-validated L2 logistic
// regression on per-scenario parity and weight must have AUC in [0.45, 0.55].
ExchangeabilityResult RunExchangeabilityTest(const GameConfig& config);

// Mann-Whitney AUC of scores for positives vs negatives (ties count half).
double Auc(std::span<const double> scores, std::span<const int> labels);

// Matched-depth pool: chains of Fredkin gates with the given depths over four
// inputs.
std::vector<Circuit> MatchedDepthPool(std::span<const std::size_t> depths);

std::vector<Circuit> DefaultGamePool();

}  // namespace pdfhc

#endif  // PDFHC_SECURITY_GAMES_H_
