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

#include "pdfhc/security/games.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "pdfhc/circuit/catalog.h"
#include "pdfhc/evaluator/evaluator.h"

namespace pdfhc {

namespace {

constexpr std::size_t kWindow = 4;  // pixels per side of a chi-square window

// Runs fn(i) for i in [0, count); thread k takes i = k, k + T, ... Results
// must be written to per-index slots so the outcome does not depend on T.
void ParallelFor(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Index of a maximum, ties broken uniformly at random.
std::size_t ArgMax(std::span<const double> scores, SecureRng& rng) {
  std::size_t best = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (ties == 0 || scores[i] > scores[best]) {
      best = i;
      ties = 1;
    } else if (scores[i] == scores[best]) {
      ++ties;
      if (rng.Uniform(ties) == 0) best = i;
    }
  }
  return best;
}

std::vector<WireIndex> PlanesOfKind(const Circuit& c, bool inputs) {
  std::vector<WireIndex> out;
  for (WireIndex w = 0; w < c.wire_count(); ++w) {
    if ((c.wire(w).kind == WireKind::kInput) == inputs) out.push_back(w);
  }
  return out;
}

double ChiSquareUpper(double stat, double dof) {
  if (dof <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
}

class RandomGuess : public Adversary {
 public:
  std::string name() const override { return "random-guess"; }
};

class GlobalBias : public Adversary {
 public:
  std::string name() const override { return "global-bias"; }

  std::size_t GuessPosition(const AdversaryView& v, SecureRng& rng) const override {
    const auto planes = PlanesOfKind(*v.circuit, true);
    const std::size_t n = v.embedded.front().size();
    std::vector<double> weight(n, 0.0);
    for (WireIndex w : planes) {
      const auto px = v.embedded[w].data();
      for (std::size_t i = 0; i < n; ++i) weight[i] += px[i] & 1;
    }
    const double mid = double(planes.size()) / 2;
    for (auto& x : weight) x = std::abs(x - mid);
    return ArgMax(weight, rng);
  }

  bool Distinguish(const AdversaryView& v, SecureRng&) const override {
    const auto planes = PlanesOfKind(*v.circuit, true);
    double ones = 0;
    double total = 0;
    for (WireIndex w : planes) {
      for (std::uint8_t px : v.embedded[w].data()) ones += px & 1;
      total += double(v.embedded[w].size());
    }
    return ones > total / 2;
  }
};

// Sums per-plane chi-square statistics of the ones count in each 4x4-pixel
// window (48 coordinates) of the input planes.
class WindowedChiSquare : public Adversary {
 public:
  std::string name() const override { return "chi-square"; }

  std::size_t GuessPosition(const AdversaryView& v, SecureRng& rng) const override {
    const auto stats = WindowStats(v);
    const std::size_t win = ArgMax(stats, rng);
    const std::size_t wcols = v.embedded.front().width() / kWindow;
    const std::size_t r = (win / wcols) * kWindow + rng.Uniform(kWindow);
    const std::size_t c = (win % wcols) * kWindow + rng.Uniform(kWindow);
    return v.embedded.front().Index({r, c, rng.Uniform(ImagePlane::kChannels)});
  }

  bool Distinguish(const AdversaryView& v, SecureRng&) const override {
    const auto stats = WindowStats(v);
    const double total = std::accumulate(stats.begin(), stats.end(), 0.0);
    const double dof = double(stats.size() * PlanesOfKind(*v.circuit, true).size());
    return ChiSquareUpper(total, dof) < 0.5;
  }

 private:
  static std::vector<double> WindowStats(const AdversaryView& v) {
    const ImagePlane& first = v.embedded.front();
    const std::size_t wrows = first.height() / kWindow;
    const std::size_t wcols = first.width() / kWindow;
    const double cells = double(kWindow * kWindow * ImagePlane::kChannels);
    std::vector<double> stats(wrows * wcols, 0.0);
    std::vector<double> ones(wrows * wcols);
    for (WireIndex w : PlanesOfKind(*v.circuit, true)) {
      const auto px = v.embedded[w].data();
      std::fill(ones.begin(), ones.end(), 0.0);
      for (std::size_t r = 0; r < wrows * kWindow; ++r) {
        for (std::size_t c = 0; c < wcols * kWindow; ++c) {
          const std::size_t base = (r * first.width() + c) * ImagePlane::kChannels;
          double& o = ones[(r / kWindow) * wcols + c / kWindow];
          for (std::size_t k = 0; k < ImagePlane::kChannels; ++k) o += px[base + k] & 1;
        }
      }
      for (std::size_t i = 0; i < ones.size(); ++i) {
        const double d = ones[i] - cells / 2;
        stats[i] += d * d / (cells / 4);
      }
    }
    return stats;
  }
};

// Position: the coordinate whose LSBs change most often between M' and M''.
// Existence: agreement of adjacent input planes of M' as a chi-square test.
class PairwiseCorrelation : public Adversary {
 public:
  std::string name() const override { return "pairwise-correlation"; }

  std::size_t GuessPosition(const AdversaryView& v, SecureRng& rng) const override {
    const std::size_t n = v.embedded.front().size();
    std::vector<double> changes(n, 0.0);
    for (std::size_t w = 0; w < v.embedded.size(); ++w) {
      const auto a = v.embedded[w].data();
      const auto b = v.computed[w].data();
      for (std::size_t i = 0; i < n; ++i) changes[i] += (a[i] ^ b[i]) & 1;
    }
    return ArgMax(changes, rng);
  }

  bool Distinguish(const AdversaryView& v, SecureRng&) const override {
    const auto planes = PlanesOfKind(*v.circuit, true);
    if (planes.size() < 2) return false;
    const double n = double(v.embedded.front().size());
    double stat = 0;
    for (std::size_t i = 0; i + 1 < planes.size(); ++i) {
      const auto a = v.embedded[planes[i]].data();
      const auto b = v.embedded[planes[i + 1]].data();
      double agree = 0;
      for (std::size_t p = 0; p < a.size(); ++p) agree += ((a[p] ^ b[p]) & 1) == 0;
      const double z = (agree - n / 2) / std::sqrt(n / 4);
      stat += z * z;
    }
    return ChiSquareUpper(stat, double(planes.size() - 1)) < 0.5;
  }
};

// Intent only: bets that the deepest unpadded circuit is the real one.
class DepthOracle : public Adversary {
 public:
  std::string name() const override { return "depth-oracle"; }

  std::size_t GuessIntent(const IntentView& v, SecureRng& rng) const override {
    if (v.oracle_circuits.size() != v.candidates.size()) return Adversary::GuessIntent(v, rng);
    std::vector<double> depth;
    for (const auto& c : v.oracle_circuits) depth.push_back(double(c.Depth()));
    return ArgMax(depth, rng);
  }
};

// Wire kinds are public, so every non-input plane has a known initial
// constant. Gates split C_obf into connected components (one per sub-circuit);
// a coordinate matching every constant of a large component is a lane unless
// constants were written everywhere.
class AncillaPattern : public Adversary {
 public:
  std::string name() const override { return "ancilla-pattern"; }

  std::size_t GuessPosition(const AdversaryView& v, SecureRng& rng) const override {
    return ArgMax(FullMatches(v), rng);
  }

  bool Distinguish(const AdversaryView& v, SecureRng&) const override {
    const auto m = FullMatches(v);
    std::size_t count = 0;
    for (double x : m) count += x > 0;
    std::size_t revealed = 0;
    for (const auto& r : v.revelations) revealed += r.lanes.size();
    return count > revealed;
  }

 private:
  // Components with fewer constants match noise too often to be useful.
  static constexpr std::size_t kMinConstants = 20;

  static std::vector<std::vector<WireIndex>> ConstantGroups(const Circuit& c) {
    std::vector<WireIndex> parent(c.wire_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<WireIndex(WireIndex)> find = [&](WireIndex w) {
      return parent[w] == w ? w : parent[w] = find(parent[w]);
    };
    for (const auto& g : c.gates()) {
      parent[find(g.data_a)] = find(g.control);
      parent[find(g.data_b)] = find(g.control);
    }
    std::vector<std::vector<WireIndex>> groups(c.wire_count());
    for (WireIndex w = 0; w < c.wire_count(); ++w) {
      if (c.wire(w).kind != WireKind::kInput) groups[find(w)].push_back(w);
    }
    std::erase_if(groups, [](const auto& g) { return g.size() < kMinConstants; });
    return groups;
  }

  // Number of large components whose constants all match at each coordinate.
  static std::vector<double> FullMatches(const AdversaryView& v) {
    const std::size_t n = v.embedded.front().size();
    std::vector<double> score(n, 0.0);
    std::vector<std::uint8_t> ok(n);
    for (const auto& group : ConstantGroups(*v.circuit)) {
      std::fill(ok.begin(), ok.end(), 1);
      for (WireIndex w : group) {
        const std::uint8_t want = InitialValue(v.circuit->wire(w).kind);
        const auto px = v.embedded[w].data();
        for (std::size_t i = 0; i < n; ++i) ok[i] &= (px[i] & 1) == want;
      }
      for (std::size_t i = 0; i < n; ++i) score[i] += ok[i];
    }
    return score;
  }
};

// One sampled world: the bundle and Eve's view of it.
struct World {
  ScenarioBundle bundle;
  std::vector<Circuit> unpadded;
  std::vector<ImagePlane> embedded;
  std::vector<ImagePlane> computed;
};

World BuildWorld(const GameConfig& cfg, const std::vector<Circuit>& pool,
                 std::span<const ImagePlane> covers, const Seed& seed, bool exp0 = false) {
  SecureRng rng(DeriveSeed(seed, "world"));
  const std::size_t real = rng.Uniform(cfg.scenarios);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(std::span(order), rng);

  World world;
  std::vector<ScenarioSpec> specs;
  for (std::size_t j = 0; j < cfg.scenarios; ++j) {
    const Circuit& c = pool[order[j % order.size()]];
    BitVector x(c.input_count());
    for (auto& b : x) b = std::uint8_t(rng() & 1);
    specs.push_back({"s" + std::to_string(j), c, std::move(x), {}});
    world.unpadded.push_back(c);
  }
  BundleOptions bo;
  bo.height = cfg.height;
  bo.width = cfg.width;
  bo.lanes_per_scenario = cfg.lanes_per_scenario;
  bo.seed = DeriveSeed(seed, "bundle");
  world.bundle = CreateBundle(std::move(specs), real, bo);
  ObfuscateBundle(world.bundle, ObfuscationParams::All(DeriveSeed(seed, "obfuscation"), cfg.dummy_gates));

  EmbedOptions eo;
  eo.ancilla_fill = cfg.ancilla_fill;
  if (exp0) {
    // Only the scenarios that will be revealed exist.
    const auto& ro = world.bundle.revelation_order;
    eo.active.emplace(ro.begin(), ro.begin() + std::ptrdiff_t(cfg.rounds));
  }
  world.embedded = Embed(world.bundle, covers, DeriveSeed(seed, "noise"), eo);
  world.computed = world.embedded;
  Evaluate(world.bundle.evaluated, world.computed);
  return world;
}

std::vector<Revelation> RunRevelations(World& world, std::size_t rounds, std::size_t& verified) {
  std::vector<Revelation> out;
  for (std::size_t r = 0; r < rounds; ++r) {
    auto result = RevealNext(world.bundle);
    auto* rev = std::get_if<Revelation>(&result);
    if (rev == nullptr) break;
    const auto check = VerifyRevelation(*rev, world.computed, world.embedded);
    if (!check) {
      throw CorrectnessViolation("decoy '" + rev->scenario_id + "' failed verification: " +
                                 check.reason);
    }
    ++verified;
    out.push_back(std::move(*rev));
  }
  return out;
}

std::vector<ImagePlane> GameCovers(const GameConfig& cfg) {
  return {SyntheticCover(cfg.height, cfg.width, 1), SyntheticCover(cfg.height, cfg.width, 2)};
}

void CheckConfig(const GameConfig& cfg) {
  if (cfg.trials < 100) throw std::invalid_argument("games need at least 100 trials");
  if (cfg.scenarios < 2) throw std::invalid_argument("games need at least two scenarios");
  SecurityParams p;
  p.n = cfg.height * cfg.width * ImagePlane::kChannels;
  p.L = cfg.scenarios;
  p.rho = cfg.lanes_per_scenario;
  p.ell = cfg.lanes_per_scenario;
  p.t = cfg.rounds;
  p.Validate();
}

void FillProportion(GameReport& r, std::size_t successes, std::size_t trials, double baseline) {
  r.trials = trials;
  r.successes = successes;
  r.rate = trials == 0 ? 0 : double(successes) / double(trials);
  r.baseline = baseline;
  r.advantage = r.rate - baseline;
  r.rate_ci = WilsonInterval(successes, trials);
  r.advantage_ci = {r.rate_ci.lo - baseline, r.rate_ci.hi - baseline};
}

std::size_t MaxInputBits(const std::vector<Circuit>& pool) {
  std::size_t bits = 1;
  for (const auto& c : pool) bits = std::max(bits, c.input_count());
  return bits;
}

std::string Fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// L2-regularized logistic regression by gradient descent on standardized
// features; returns scores for `test`.
std::vector<double> LogisticScores(const std::vector<std::vector<double>>& x,
                                   const std::vector<int>& y, std::span<const std::size_t> train,
                                   std::span<const std::size_t> test) {
  const std::size_t d = x.front().size();
  std::vector<double> mean(d, 0), sd(d, 0);
  for (std::size_t i : train) {
    for (std::size_t k = 0; k < d; ++k) mean[k] += x[i][k];
  }
  for (auto& m : mean) m /= double(train.size());
  for (std::size_t i : train) {
    for (std::size_t k = 0; k < d; ++k) sd[k] += (x[i][k] - mean[k]) * (x[i][k] - mean[k]);
  }
  for (auto& s : sd) s = std::sqrt(s / double(train.size())) + 1e-9;
  auto z = [&](std::size_t i, std::size_t k) { return (x[i][k] - mean[k]) / sd[k]; };

  constexpr double kLambda = 1e-2;
  constexpr double kStep = 0.5;
  std::vector<double> w(d, 0.0);
  double b = 0;
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<double> gw(d, 0.0);
    double gb = 0;
    for (std::size_t i : train) {
      double s = b;
      for (std::size_t k = 0; k < d; ++k) s += w[k] * z(i, k);
      const double err = 1.0 / (1.0 + std::exp(-s)) - y[i];
      for (std::size_t k = 0; k < d; ++k) gw[k] += err * z(i, k);
      gb += err;
    }
    for (std::size_t k = 0; k < d; ++k) w[k] -= kStep * (gw[k] / double(train.size()) + kLambda * w[k]);
    b -= kStep * gb / double(train.size());
  }
  std::vector<double> out;
  for (std::size_t i : test) {
    double s = b;
    for (std::size_t k = 0; k < d; ++k) s += w[k] * z(i, k);
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::size_t Adversary::GuessPosition(const AdversaryView& view, SecureRng& rng) const {
  return rng.Uniform(view.embedded.front().size());
}

bool Adversary::Distinguish(const AdversaryView&, SecureRng& rng) const { return rng() & 1; }

std::size_t Adversary::GuessIntent(const IntentView& view, SecureRng& rng) const {
  return rng.Uniform(view.candidates.size());
}

std::vector<std::string> AdversaryNames() {
  return {"random-guess", "global-bias", "chi-square", "pairwise-correlation", "depth-oracle",
          "ancilla-pattern"};
}

std::unique_ptr<Adversary> MakeAdversary(const std::string& name) {
  if (name == "random-guess") return std::make_unique<RandomGuess>();
  if (name == "global-bias") return std::make_unique<GlobalBias>();
  if (name == "chi-square") return std::make_unique<WindowedChiSquare>();
  if (name == "pairwise-correlation") return std::make_unique<PairwiseCorrelation>();
  if (name == "depth-oracle") return std::make_unique<DepthOracle>();
  if (name == "ancilla-pattern") return std::make_unique<AncillaPattern>();
  throw std::invalid_argument("unknown adversary '" + name + "'");
}

nlohmann::json ReportToJson(const GameReport& r) {
  nlohmann::json j = {{"game", r.game},
                      {"adversary", r.adversary},
                      {"trials", r.trials},
                      {"successes", r.successes},
                      {"rate", r.rate},
                      {"baseline", r.baseline},
                      {"advantage", r.advantage},
                      {"rate_ci", {r.rate_ci.lo, r.rate_ci.hi}},
                      {"advantage_ci", {r.advantage_ci.lo, r.advantage_ci.hi}},
                      {"verifications", r.verifications},
                      {"verdict", r.passed ? "pass" : "fail"},
                      {"notes", r.notes}};
  j["analytic_bound_log10"] =
      r.analytic_bound_log10 ? nlohmann::json(*r.analytic_bound_log10) : nlohmann::json();
  j["alternate_baseline"] =
      r.alternate_baseline ? nlohmann::json(*r.alternate_baseline) : nlohmann::json();
  return j;
}

std::string ReportCsvHeader() {
  return "game,adversary,trials,successes,rate,baseline,advantage,rate_lo,rate_hi,adv_lo,adv_hi,"
         "bound_log10,alt_baseline,verifications,verdict";
}

std::string ReportCsvRow(const GameReport& r) {
  std::ostringstream os;
  os << r.game << ',' << r.adversary << ',' << r.trials << ',' << r.successes << ','
     << Fmt(r.rate) << ',' << Fmt(r.baseline) << ',' << Fmt(r.advantage) << ','
     << Fmt(r.rate_ci.lo) << ',' << Fmt(r.rate_ci.hi) << ',' << Fmt(r.advantage_ci.lo) << ','
     << Fmt(r.advantage_ci.hi) << ','
     << (r.analytic_bound_log10 ? Fmt(*r.analytic_bound_log10) : "") << ','
     << (r.alternate_baseline ? Fmt(*r.alternate_baseline) : "") << ',' << r.verifications << ','
     << (r.passed ? "pass" : "fail");
  return os.str();
}

std::vector<Circuit> DefaultGamePool() {
  return {Comparator8Circuit(), BrightnessCheckCircuit(), ColorBalanceCheckCircuit(),
          NoiseLevelCheckCircuit()};
}

std::vector<Circuit> MatchedDepthPool(std::span<const std::size_t> depths) {
  std::vector<Circuit> pool;
  for (std::size_t d : depths) {
    Circuit c("chain" + std::to_string(d));
    std::array<WireIndex, 4> w{};
    for (std::size_t i = 0; i < 4; ++i) {
      w[i] = c.AddWire(WireKind::kInput, "x" + std::to_string(i));
      c.AddInput(w[i]);
    }
    // Consecutive gates share two wires, so the depth equals the gate count.
    for (std::size_t g = 0; g < d; ++g) {
      c.AddGate(w[g % 4], w[(g + 1) % 4], w[(g + 2) % 4]);
    }
    for (std::size_t i = 0; i < 4; ++i) c.AddOutput(w[i], "y" + std::to_string(i));
    pool.push_back(std::move(c));
  }
  return pool;
}

GameReport RunPrivacyGame(const GameConfig& cfg, const Adversary& adversary) {
  CheckConfig(cfg);
  const auto pool = cfg.pool.empty() ? DefaultGamePool() : cfg.pool;
  const auto covers = GameCovers(cfg);
  const std::size_t n = cfg.height * cfg.width * ImagePlane::kChannels;
  std::vector<std::uint8_t> hit(cfg.trials, 0);
  ParallelFor(cfg.trials, cfg.threads, [&](std::size_t i) {
    const Seed seed = DeriveSeed(cfg.seed, "privacy-trial", i);
    const World world = BuildWorld(cfg, pool, covers, seed);
    SecureRng rng(DeriveSeed(seed, "adversary"));
    const AdversaryView view{&world.bundle.evaluated, world.embedded, world.computed, {}};
    const std::size_t guess = adversary.GuessPosition(view, rng);
    for (const auto& s : world.bundle.scenarios) {
      if (std::find(s.lanes.begin(), s.lanes.end(), guess) != s.lanes.end()) hit[i] = 1;
    }
  });

  GameReport r;
  r.game = "privacy";
  r.adversary = adversary.name();
  const double baseline = double(cfg.scenarios * cfg.lanes_per_scenario) / double(n);
  FillProportion(r, std::accumulate(hit.begin(), hit.end(), std::size_t{0}), cfg.trials, baseline);
  SecurityParams p;
  p.n = n;
  p.L = cfg.scenarios;
  p.ell = cfg.lanes_per_scenario;
  p.rho = cfg.lanes_per_scenario;
  r.analytic_bound_log10 = AdvPrivBoundLog(p);
  r.alternate_baseline = double(cfg.scenarios * MaxInputBits(pool)) / double(n);
  r.passed = r.advantage_ci.Contains(0.0);
  r.notes = "baseline L*rho/n; alternate_baseline L*ell/n with ell = input bits per scenario";
  return r;
}

CoercionReports RunCoercionGame(const GameConfig& cfg, const Adversary& adversary,
                                bool oracle_circuits) {
  CheckConfig(cfg);
  const auto pool = cfg.pool.empty() ? DefaultGamePool() : cfg.pool;
  const auto covers = GameCovers(cfg);
  const std::size_t n = cfg.height * cfg.width * ImagePlane::kChannels;

  // Existence arm.
  std::vector<std::uint8_t> world_bit(cfg.trials), guess_bit(cfg.trials);
  std::vector<std::size_t> verified(cfg.trials, 0);
  ParallelFor(cfg.trials, cfg.threads, [&](std::size_t i) {
    const Seed seed = DeriveSeed(cfg.seed, "existence-trial", i);
    SecureRng coin(DeriveSeed(seed, "coin"));
    const bool b = coin() & 1;
    World world = BuildWorld(cfg, pool, covers, seed, !b);
    const auto revs = RunRevelations(world, cfg.rounds, verified[i]);
    SecureRng rng(DeriveSeed(seed, "adversary"));
    const AdversaryView view{&world.bundle.evaluated, world.embedded, world.computed, revs};
    world_bit[i] = b;
    guess_bit[i] = adversary.Distinguish(view, rng) ? 1 : 0;
  });

  // Intent arm, always in Exp1 worlds.
  std::vector<std::uint8_t> won(cfg.trials, 0);
  std::vector<std::size_t> verified_intent(cfg.trials, 0);
  ParallelFor(cfg.trials, cfg.threads, [&](std::size_t i) {
    const Seed seed = DeriveSeed(cfg.seed, "intent-trial", i);
    World world = BuildWorld(cfg, pool, covers, seed);
    RunRevelations(world, cfg.rounds, verified_intent[i]);
    IntentView view;
    view.scenario_count = cfg.scenarios;
    const auto& revealed = world.bundle.coercion.revealed;
    std::vector<std::size_t> candidate_index;
    for (std::size_t j = 0; j < world.bundle.scenarios.size(); ++j) {
      const auto& id = world.bundle.scenarios[j].id;
      if (std::find(revealed.begin(), revealed.end(), id) != revealed.end()) continue;
      view.candidates.push_back(id);
      candidate_index.push_back(j);
      if (oracle_circuits) view.oracle_circuits.push_back(world.unpadded[j]);
    }
    SecureRng rng(DeriveSeed(seed, "adversary"));
    const std::size_t pick = adversary.GuessIntent(view, rng);
    won[i] = pick < candidate_index.size() && candidate_index[pick] == world.bundle.real_index;
  });

  SecurityParams p;
  p.n = n;
  p.L = cfg.scenarios;
  p.ell = cfg.lanes_per_scenario;
  p.rho = cfg.lanes_per_scenario;
  p.t = cfg.rounds;

  CoercionReports out;
  GameReport& e = out.existence;
  e.game = "coercion-existence";
  e.adversary = adversary.name();
  std::size_t n1 = 0, s1 = 0, n0 = 0, s0 = 0, correct = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    (world_bit[i] ? n1 : n0) += 1;
    (world_bit[i] ? s1 : s0) += guess_bit[i];
    correct += world_bit[i] == guess_bit[i];
  }
  FillProportion(e, correct, cfg.trials, 0.5);
  e.advantage = (n1 ? double(s1) / double(n1) : 0) - (n0 ? double(s0) / double(n0) : 0);
  e.advantage_ci = NewcombeInterval(s1, n1, s0, n0);
  e.analytic_bound_log10 = AdvExistBoundLog(p);
  e.verifications = std::accumulate(verified.begin(), verified.end(), std::size_t{0});
  e.passed = e.advantage_ci.Contains(0.0);
  e.notes = "rate = Pr[b' = b]; advantage = Pr[b'=1|Exp1] - Pr[b'=1|Exp0] (" + std::to_string(n1) +
            " Exp1, " + std::to_string(n0) + " Exp0 trials), Newcombe interval";

  GameReport& in = out.intent;
  in.game = "coercion-intent";
  in.adversary = adversary.name();
  FillProportion(in, std::accumulate(won.begin(), won.end(), std::size_t{0}), cfg.trials,
                 IntentBaseline(p));
  in.verifications = std::accumulate(verified_intent.begin(), verified_intent.end(), std::size_t{0});
  if (oracle_circuits) {
    const double delta = DeltaCircuit(std::span<const Circuit>(pool));
    in.analytic_bound_log10 = delta > 0 ? std::log10(delta) : -std::numeric_limits<double>::infinity();
    in.passed = in.advantage_ci.lo <= delta;
    in.notes = "advantage bounded by delta_circuit = " + Fmt(delta);
  } else {
    in.passed = in.advantage_ci.Contains(0.0);
    in.notes = "baseline 1/(L - t)";
  }
  return out;
}

double Auc(std::span<const double> scores, std::span<const int> labels) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  // Mid-ranks for ties.
  double rank_sum = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const double mid = (double(i + 1) + double(j)) / 2;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[idx[k]] == 1) {
        rank_sum += mid;
        ++pos;
      }
    }
    i = j;
  }
  const std::size_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("AUC needs both classes");
  return (rank_sum - double(pos) * double(pos + 1) / 2) / (double(pos) * double(neg));
}

ExchangeabilityResult RunExchangeabilityTest(const GameConfig& cfg) {
  CheckConfig(cfg);
  if (cfg.scenarios < 3) throw std::invalid_argument("exchangeability needs two decoys");
  const std::vector<Circuit> pool{Adder4Circuit()};
  const auto covers = GameCovers(cfg);
  const std::size_t total = 2 * cfg.trials;

  std::vector<std::vector<double>> features(total);
  std::vector<double> sanity(total, 0.0);
  std::vector<int> labels(total);
  ParallelFor(total, cfg.threads, [&](std::size_t i) {
    const Seed seed = DeriveSeed(cfg.seed, "exchangeability-trial", i);
    World world = BuildWorld(cfg, pool, covers, seed);
    const auto outputs = Extract(world.bundle, world.computed);
    std::vector<BitVector> y;
    for (const auto& per_lane : outputs) y.push_back(per_lane.front());
    const int label = int(i % 2);
    if (label == 1) {
      const auto& ro = world.bundle.revelation_order;
      std::swap(y[ro[0]], y[ro[1]]);
    }
    std::vector<double> f;
    for (const auto& yj : y) {
      const double weight = std::accumulate(yj.begin(), yj.end(), 0.0);
      f.push_back(double(int(weight) & 1));
      f.push_back(weight);
    }
    // Inversion: whoever knows the lanes can re-read them and spot the swap.
    double mismatches = 0;
    for (std::size_t j = 0; j < y.size(); ++j) mismatches += y[j] != outputs[j].front();
    features[i] = std::move(f);
    sanity[i] = mismatches;
    labels[i] = label;
  });

  // Five folds over a seeded permutation.
  std::vector<std::size_t> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  SecureRng fold_rng(DeriveSeed(cfg.seed, "folds"));
  Shuffle(std::span(perm), fold_rng);
  std::vector<double> scores(total, 0.0);
  constexpr std::size_t kFolds = 5;
  for (std::size_t f = 0; f < kFolds; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t k = 0; k < total; ++k) (k % kFolds == f ? test : train).push_back(perm[k]);
    const auto s = LogisticScores(features, labels, train, test);
    for (std::size_t k = 0; k < test.size(); ++k) scores[test[k]] = s[k];
  }

  ExchangeabilityResult out;
  out.auc = Auc(scores, labels);
  out.sanity_auc = Auc(sanity, labels);

  // Structural check: the evaluated circuit must not depend on which
  // scenario is real, nor on ids or narratives.
  {
    SecureRng rng(DeriveSeed(cfg.seed, "oblivious"));
    std::vector<ScenarioSpec> a, b;
    const auto dpool = DefaultGamePool();
    for (std::size_t j = 0; j < cfg.scenarios; ++j) {
      const Circuit& c = dpool[j % dpool.size()];
      BitVector x(c.input_count());
      for (auto& bit : x) bit = std::uint8_t(rng() & 1);
      a.push_back({"scenario-" + std::to_string(j), c, x, "cover story " + std::to_string(j)});
      b.push_back({"id" + std::to_string(cfg.scenarios - j), c, x, "other text"});
    }
    BundleOptions bo;
    bo.height = cfg.height;
    bo.width = cfg.width;
    bo.seed = DeriveSeed(cfg.seed, "oblivious-bundle");
    auto ba = CreateBundle(a, 0, bo);
    auto bb = CreateBundle(b, cfg.scenarios - 1, bo);
    const auto params = ObfuscationParams::All(DeriveSeed(cfg.seed, "oblivious-obf"), cfg.dummy_gates);
    ObfuscateBundle(ba, params);
    ObfuscateBundle(bb, params);
    bool clean = ba.evaluated == bb.evaluated;
    for (const auto& w : ba.evaluated.wires()) clean = clean && w.label.empty();
    for (const auto& o : ba.evaluated.outputs()) clean = clean && o.label.empty();
    for (const auto& s : a) {
      for (const auto& w : ba.evaluated.wires()) {
        clean = clean && w.id.find(s.id) == std::string::npos;
      }
    }
    out.label_oblivious = clean;
  }

  GameReport& r = out.report;
  r.game = "exchangeability";
  r.adversary = "logistic-regression";
  r.trials = total;
  r.rate = out.auc;
  r.baseline = 0.5;
  r.advantage = out.auc - 0.5;
  r.rate_ci = {0.45, 0.55};
  r.advantage_ci = {-0.05, 0.05};
  r.passed = out.auc >= 0.45 && out.auc <= 0.55 && out.label_oblivious;
  r.notes = "rate = cross-validated AUC; rate_ci = acceptance band; sanity AUC with lane access " +
            Fmt(out.sanity_auc) + "; label oblivious " + (out.label_oblivious ? "yes" : "no");
  return out;
}

}  // namespace pdfhc
