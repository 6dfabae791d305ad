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

#ifndef PDFHC_CLIENT_SCHEME_H_
#define PDFHC_CLIENT_SCHEME_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pdfhc/circuit/circuit.h"
#include "pdfhc/common/random.h"
#include "pdfhc/image/image.h"
#include "pdfhc/obfuscation/obfuscate.h"

namespace pdfhc {

// Violated preconditions of the client-side protocol.
class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Secret lane coordinates, as linear plane indices (see ImagePlane::Index).
// lanes[j] holds the rho coordinates of scenario j. All entries are distinct.
struct LaneAssignment {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t lanes_per_scenario = 0;
  std::vector<std::vector<std::size_t>> lanes;

  std::size_t coordinate_count() const { return height * width * ImagePlane::kChannels; }
  std::size_t scenario_count() const { return lanes.size(); }
};

// Draws L disjoint sets of rho coordinates, uniformly without replacement.
// Throws ClientError unless L * rho <= n / 100.
LaneAssignment LocGen(std::size_t height, std::size_t width, std::size_t scenarios,
                      std::size_t lanes_per_scenario, SecureRng& rng);

struct Scenario {
  std::string id;
  Circuit circuit;  // padded
  BitVector inputs;
  std::vector<std::size_t> lanes;
  std::string narrative;
  std::size_t slot = 0;  // which sub-circuit of the combined circuit it runs on
  std::vector<BitVector> outputs;  // one per lane, filled by Extract
};

struct CoercionState {
  std::size_t rounds_elapsed = 0;
  std::vector<std::string> revealed;
  std::size_t budget = 0;  // decoys that may still be revealed in total
  bool claimed_exhausted = false;
};

// Alice's secret. Scenarios whose padded circuits are identical share one
// sub-circuit (slot) of `combined`; the evaluator runs `evaluated`, which is
// `combined` or an obfuscation of it, and `plane_of` maps each wire of
// `combined` to its plane (= wire index of `evaluated`).
struct ScenarioBundle {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t lanes_per_scenario = 1;
  std::vector<Scenario> scenarios;
  std::size_t real_index = 0;
  std::vector<Circuit> slots;
  std::vector<WireIndex> slot_base;  // first wire of each slot inside `combined`
  Circuit combined;
  Circuit evaluated;
  std::vector<WireIndex> plane_of;
  std::optional<WireMap> wire_map;
  std::vector<std::size_t> revelation_order;  // decoy scenario indices
  Seed seed{};
  CoercionState coercion;

  std::size_t coordinate_count() const { return height * width * ImagePlane::kChannels; }
  std::size_t plane_count() const { return evaluated.wire_count(); }
  std::size_t gate_count() const;  // common padded m
  // Plane carrying local wire `local` of scenario `scenario`'s circuit.
  WireIndex PlaneFor(std::size_t scenario, WireIndex local) const;
  std::vector<WireIndex> PlaneBinding(std::size_t scenario) const;
  std::size_t FindScenario(const std::string& id) const;
};

struct ScenarioSpec {
  std::string id;
  Circuit circuit;
  BitVector inputs;
  std::string narrative;
};

struct BundleOptions {
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t lanes_per_scenario = 1;
  std::optional<std::size_t> pad_to;  // defaults to the largest gate count
  Seed seed{};
};

// Pads every circuit to a common gate count, merges identical padded
// circuits into shared slots, draws lanes and a revelation order.
ScenarioBundle CreateBundle(std::vector<ScenarioSpec> specs, std::size_t real_index,
                            const BundleOptions& options);

// Replaces `evaluated` with an obfuscation of `combined`.
void ObfuscateBundle(ScenarioBundle& bundle, const ObfuscationParams& params);

// Where non-input wire constants are written. kLanes writes them only at
// lane coordinates and leaves noise everywhere else. kAllCoordinates writes
// them at every coordinate, so that lane coordinates do not stand out by
// carrying the constant pattern.
enum class AncillaFill { kLanes, kAllCoordinates };

struct EmbedOptions {
  AncillaFill ancilla_fill = AncillaFill::kLanes;
  // Scenarios to place; all when unset.
  std::optional<std::vector<std::size_t>> active;
};

// One plane per evaluated wire. Plane i starts from covers[i % covers.size()]
// and its LSBs are noise bits [i * n, (i + 1) * n) of the stream under
// `noise_seed`, before lane values are written.
std::vector<ImagePlane> Embed(const ScenarioBundle& bundle, std::span<const ImagePlane> covers,
                              const Seed& noise_seed, const EmbedOptions& options = {});

// Outputs of every scenario at every one of its lanes.
std::vector<std::vector<BitVector>> ReadOutputs(const ScenarioBundle& bundle,
                                                std::span<const ImagePlane> computed);
// ReadOutputs, also recorded in the scenarios.
std::vector<std::vector<BitVector>> Extract(ScenarioBundle& bundle,
                                            std::span<const ImagePlane> computed);

// What Alice hands over in one coercion round.
struct Revelation {
  std::string scenario_id;
  Circuit circuit;
  BitVector inputs;
  std::vector<std::size_t> lanes;
  BitVector output;
  std::string narrative;
  std::vector<WireIndex> binding;  // plane of each local wire
};

struct TerminalClaim {
  std::size_t rounds = 0;
  std::string statement;
};

using RevealResult = std::variant<Revelation, TerminalClaim>;

// Next decoy in the committed order, or the terminal claim once the budget
// is spent. Never returns the real scenario.
RevealResult RevealNext(ScenarioBundle& bundle);
Revelation MakeRevelation(const ScenarioBundle& bundle, std::size_t scenario);

struct VerificationResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Eve's check: the revealed circuit's simulated output must match the claimed
// output and the LSBs at every revealed lane of the computed output planes.
// When the embedded planes are supplied, the inputs are checked too.
VerificationResult VerifyRevelation(const Revelation& rev, std::span<const ImagePlane> computed,
                                    std::span<const ImagePlane> embedded = {});

}  // namespace pdfhc

#endif  // PDFHC_CLIENT_SCHEME_H_
