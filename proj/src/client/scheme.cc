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

#include "pdfhc/client/scheme.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace pdfhc {

LaneAssignment LocGen(std::size_t height, std::size_t width, std::size_t scenarios,
                      std::size_t lanes_per_scenario, SecureRng& rng) {
  LaneAssignment out{height, width, lanes_per_scenario, {}};
  const std::size_t n = out.coordinate_count();
  if (scenarios == 0 || lanes_per_scenario == 0) {
    throw ClientError("lane generation needs at least one scenario and one lane per scenario");
  }
  if (scenarios * lanes_per_scenario * 100 > n) {
    throw ClientError("capacity violation: L * rho = " + std::to_string(scenarios * lanes_per_scenario) +
                      " secret coordinates exceed n / 100 for n = " + std::to_string(n));
  }
  std::unordered_set<std::size_t> used;
  for (std::size_t j = 0; j < scenarios; ++j) {
    std::vector<std::size_t> lanes;
    while (lanes.size() < lanes_per_scenario) {
      const std::size_t p = rng.Uniform(n);
      if (used.insert(p).second) lanes.push_back(p);
    }
    out.lanes.push_back(std::move(lanes));
  }
  return out;
}

std::size_t ScenarioBundle::gate_count() const {
  return scenarios.empty() ? 0 : scenarios.front().circuit.gate_count();
}

WireIndex ScenarioBundle::PlaneFor(std::size_t scenario, WireIndex local) const {
  const Scenario& s = scenarios.at(scenario);
  if (local >= s.circuit.wire_count()) throw ClientError("wire outside the scenario circuit");
  return plane_of.at(slot_base.at(s.slot) + local);
}

std::vector<WireIndex> ScenarioBundle::PlaneBinding(std::size_t scenario) const {
  std::vector<WireIndex> binding;
  for (WireIndex w = 0; w < scenarios.at(scenario).circuit.wire_count(); ++w) {
    binding.push_back(PlaneFor(scenario, w));
  }
  return binding;
}

std::size_t ScenarioBundle::FindScenario(const std::string& id) const {
  for (std::size_t j = 0; j < scenarios.size(); ++j) {
    if (scenarios[j].id == id) return j;
  }
  throw ClientError("no scenario with id '" + id + "'");
}

ScenarioBundle CreateBundle(std::vector<ScenarioSpec> specs, std::size_t real_index,
                            const BundleOptions& options) {
  if (specs.size() < 2) throw ClientError("a bundle needs at least two scenarios");
  if (real_index >= specs.size()) throw ClientError("real scenario index out of range");
  std::size_t m = 0;
  std::unordered_set<std::string> ids;
  for (const auto& s : specs) {
    if (s.inputs.size() != s.circuit.input_count()) {
      throw ClientError("scenario '" + s.id + "' has " + std::to_string(s.inputs.size()) +
                        " input bits but its circuit takes " + std::to_string(s.circuit.input_count()));
    }
    if (!ids.insert(s.id).second) throw ClientError("duplicate scenario id '" + s.id + "'");
    m = std::max(m, s.circuit.gate_count());
  }
  if (options.pad_to) {
    if (*options.pad_to < m) {
      throw ClientError("pad target " + std::to_string(*options.pad_to) +
                        " is below the largest circuit (" + std::to_string(m) + " gates)");
    }
    m = *options.pad_to;
  }

  ScenarioBundle b;
  b.height = options.height;
  b.width = options.width;
  b.lanes_per_scenario = options.lanes_per_scenario;
  b.real_index = real_index;
  b.seed = options.seed;

  SecureRng lane_rng(DeriveSeed(options.seed, "lanes"));
  const LaneAssignment lanes =
      LocGen(options.height, options.width, specs.size(), options.lanes_per_scenario, lane_rng);

  b.combined = Circuit("combined");
  for (std::size_t j = 0; j < specs.size(); ++j) {
    Scenario s;
    s.id = specs[j].id;
    s.circuit = PadTo(specs[j].circuit, m);
    s.inputs = std::move(specs[j].inputs);
    s.narrative = std::move(specs[j].narrative);
    s.lanes = lanes.lanes[j];
    const auto same = std::find(b.slots.begin(), b.slots.end(), s.circuit);
    s.slot = static_cast<std::size_t>(same - b.slots.begin());
    if (same == b.slots.end()) {
      b.slot_base.push_back(AppendCircuit(b.combined, s.circuit, "s" + std::to_string(s.slot) + "."));
      b.slots.push_back(s.circuit);
    }
    b.scenarios.push_back(std::move(s));
  }
  b.evaluated = b.combined;
  b.plane_of.resize(b.combined.wire_count());
  std::iota(b.plane_of.begin(), b.plane_of.end(), 0);

  for (std::size_t j = 0; j < specs.size(); ++j) {
    if (j != real_index) b.revelation_order.push_back(j);
  }
  SecureRng order_rng(DeriveSeed(options.seed, "revelation-order"));
  Shuffle(std::span(b.revelation_order), order_rng);
  b.coercion.budget = b.revelation_order.size();
  return b;
}

void ObfuscateBundle(ScenarioBundle& bundle, const ObfuscationParams& params) {
  ObfuscationResult r = Obfuscate(bundle.combined, params);
  bundle.evaluated = std::move(r.circuit);
  bundle.plane_of = r.map.to_obfuscated;
  bundle.wire_map = std::move(r.map);
}

namespace {

void CheckPlanes(const ScenarioBundle& bundle, std::span<const ImagePlane> planes,
                 const char* what) {
  if (planes.size() != bundle.plane_count()) {
    throw ClientError(std::string(what) + ": expected " + std::to_string(bundle.plane_count()) +
                      " planes, got " + std::to_string(planes.size()));
  }
  for (const auto& p : planes) {
    if (p.height() != bundle.height || p.width() != bundle.width) {
      throw ClientError(std::string(what) + ": plane is " + std::to_string(p.height()) + "x" +
                        std::to_string(p.width()) + ", bundle expects " +
                        std::to_string(bundle.height) + "x" + std::to_string(bundle.width));
    }
  }
}

inline void SetLsb(ImagePlane& plane, std::size_t index, std::uint8_t bit) {
  plane[index] = static_cast<std::uint8_t>((plane[index] & ~1u) | bit);
}

}  // namespace

std::vector<ImagePlane> Embed(const ScenarioBundle& bundle, std::span<const ImagePlane> covers,
                              const Seed& noise_seed, const EmbedOptions& options) {
  if (covers.empty()) throw ClientError("embed needs at least one cover plane");
  for (const auto& c : covers) {
    if (c.height() != bundle.height || c.width() != bundle.width) {
      throw ClientError("cover is " + std::to_string(c.height()) + "x" + std::to_string(c.width()) +
                        ", bundle expects " + std::to_string(bundle.height) + "x" +
                        std::to_string(bundle.width));
    }
  }
  const std::size_t n = bundle.coordinate_count();
  std::vector<ImagePlane> planes;
  planes.reserve(bundle.plane_count());
  NoiseSource noise(noise_seed);
  for (std::size_t i = 0; i < bundle.plane_count(); ++i) {
    planes.push_back(covers[i % covers.size()]);
    noise.SeekBit(std::uint64_t(i) * n);
    FillNoise(planes.back(), noise);
  }

  if (options.ancilla_fill == AncillaFill::kAllCoordinates) {
    for (WireIndex w = 0; w < bundle.evaluated.wire_count(); ++w) {
      const WireKind kind = bundle.evaluated.wire(w).kind;
      if (kind == WireKind::kInput) continue;
      for (std::size_t p = 0; p < n; ++p) SetLsb(planes[w], p, InitialValue(kind));
    }
  }

  std::vector<std::size_t> active(bundle.scenarios.size());
  std::iota(active.begin(), active.end(), 0);
  if (options.active) active = *options.active;
  for (std::size_t j : active) {
    const Scenario& s = bundle.scenarios.at(j);
    const BitVector state = InitialState(s.circuit, s.inputs);
    const auto binding = bundle.PlaneBinding(j);
    for (std::size_t p : s.lanes) {
      for (WireIndex v = 0; v < state.size(); ++v) SetLsb(planes[binding[v]], p, state[v]);
    }
  }
  return planes;
}

std::vector<std::vector<BitVector>> ReadOutputs(const ScenarioBundle& bundle,
                                                std::span<const ImagePlane> computed) {
  CheckPlanes(bundle, computed, "extract");
  std::vector<std::vector<BitVector>> out;
  for (std::size_t j = 0; j < bundle.scenarios.size(); ++j) {
    const Scenario& s = bundle.scenarios[j];
    std::vector<BitVector> per_lane;
    for (std::size_t p : s.lanes) {
      BitVector y;
      for (const auto& o : s.circuit.outputs()) y.push_back(computed[bundle.PlaneFor(j, o.wire)][p] & 1);
      per_lane.push_back(std::move(y));
    }
    out.push_back(std::move(per_lane));
  }
  return out;
}

std::vector<std::vector<BitVector>> Extract(ScenarioBundle& bundle,
                                            std::span<const ImagePlane> computed) {
  auto out = ReadOutputs(bundle, computed);
  for (std::size_t j = 0; j < out.size(); ++j) bundle.scenarios[j].outputs = out[j];
  return out;
}

Revelation MakeRevelation(const ScenarioBundle& bundle, std::size_t scenario) {
  const Scenario& s = bundle.scenarios.at(scenario);
  Revelation rev;
  rev.scenario_id = s.id;
  rev.circuit = s.circuit;
  rev.inputs = s.inputs;
  rev.lanes = s.lanes;
  rev.output = s.outputs.empty() ? Simulate(s.circuit, s.inputs) : s.outputs.front();
  rev.narrative = s.narrative;
  rev.binding = bundle.PlaneBinding(scenario);
  return rev;
}

RevealResult RevealNext(ScenarioBundle& bundle) {
  CoercionState& st = bundle.coercion;
  const std::size_t budget = std::min(st.budget, bundle.revelation_order.size());
  if (st.rounds_elapsed >= budget) {
    st.claimed_exhausted = true;
    return TerminalClaim{st.rounds_elapsed, "no further scenarios exist"};
  }
  const std::size_t j = bundle.revelation_order[st.rounds_elapsed];
  if (j == bundle.real_index) throw ClientError("revelation order contains the real scenario");
  Revelation rev = MakeRevelation(bundle, j);
  st.revealed.push_back(rev.scenario_id);
  ++st.rounds_elapsed;
  return rev;
}

VerificationResult VerifyRevelation(const Revelation& rev, std::span<const ImagePlane> computed,
                                    std::span<const ImagePlane> embedded) {
  auto fail = [](std::string why) { return VerificationResult{false, std::move(why)}; };
  BitVector expected;
  try {
    expected = Simulate(rev.circuit, rev.inputs);
  } catch (const CircuitError& e) {
    return fail(std::string("revealed circuit cannot run on the revealed inputs: ") + e.what());
  }
  if (expected != rev.output) return fail("claimed output differs from the circuit's output");
  if (rev.binding.size() != rev.circuit.wire_count()) return fail("plane binding does not cover the circuit");
  if (rev.lanes.empty()) return fail("no lanes revealed");
  for (WireIndex plane : rev.binding) {
    if (plane >= computed.size()) return fail("plane binding points past the computed planes");
  }
  const std::size_t n = computed.empty() ? 0 : computed[0].size();
  for (std::size_t p : rev.lanes) {
    if (p >= n) return fail("lane " + std::to_string(p) + " is outside the planes");
    for (std::size_t k = 0; k < rev.circuit.outputs().size(); ++k) {
      const WireIndex w = rev.circuit.outputs()[k].wire;
      if ((computed[rev.binding[w]][p] & 1) != expected[k]) {
        return fail("output bit " + std::to_string(k) + " at lane " + std::to_string(p) +
                    " does not match");
      }
    }
  }
  if (!embedded.empty()) {
    const BitVector initial = InitialState(rev.circuit, rev.inputs);
    for (WireIndex plane : rev.binding) {
      if (plane >= embedded.size()) return fail("plane binding points past the embedded planes");
    }
    for (std::size_t p : rev.lanes) {
      for (WireIndex w = 0; w < initial.size(); ++w) {
        if ((embedded[rev.binding[w]][p] & 1) != initial[w]) {
          return fail("embedded wire " + std::to_string(w) + " at lane " + std::to_string(p) +
                      " does not hold the revealed initial value");
        }
      }
    }
  }
  return {true, {}};
}

}  // namespace pdfhc
