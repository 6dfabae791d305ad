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

#include "pdfhc/obfuscation/obfuscate.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace pdfhc {

bool WireMap::IsIdentity() const {
  for (std::size_t i = 0; i < to_obfuscated.size(); ++i) {
    if (to_obfuscated[i] != i || original_ids[i] != obfuscated_ids[i]) return false;
  }
  return true;
}

std::vector<std::size_t> RandomLinearExtension(const Circuit& circuit, SecureRng& rng) {
  const std::size_t m = circuit.gate_count();
  // Edges from the previous gate on each wire are enough: all other
  // wire-sharing pairs follow transitively.
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<std::size_t> indegree(m, 0);
  std::vector<std::size_t> last(circuit.wire_count(), m);
  for (std::size_t g = 0; g < m; ++g) {
    const auto& gate = circuit.gates()[g];
    for (WireIndex w : {gate.control, gate.data_a, gate.data_b}) {
      const std::size_t p = last[w];
      if (p != m && (succ[p].empty() || succ[p].back() != g)) {
        succ[p].push_back(g);
        ++indegree[g];
      }
      last[w] = g;
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t g = 0; g < m; ++g) {
    if (indegree[g] == 0) ready.push_back(g);
  }
  std::vector<std::size_t> order;
  order.reserve(m);
  while (!ready.empty()) {
    const std::size_t pick = rng.Uniform(ready.size());
    const std::size_t g = ready[pick];
    ready[pick] = ready.back();
    ready.pop_back();
    order.push_back(g);
    for (std::size_t s : succ[g]) {
      if (--indegree[s] == 0) ready.push_back(s);
    }
  }
  return order;
}

namespace {

std::string RandomId(SecureRng& rng, std::unordered_set<std::string>& used) {
  static constexpr char kHex[] = "0123456789abcdef";
  for (;;) {
    std::string id(12, '0');
    for (auto& ch : id) ch = kHex[rng.Uniform(16)];
    if (used.insert(id).second) return id;
  }
}

}  // namespace

ObfuscationResult Obfuscate(const Circuit& circuit, const ObfuscationParams& params) {
  const std::size_t limit = params.max_dummy_gates.value_or(4 * circuit.gate_count());
  if (params.dummy_gates > limit) {
    throw std::invalid_argument("dummy gate count " + std::to_string(params.dummy_gates) +
                                " exceeds the bound " + std::to_string(limit));
  }
  SecureRng rng(params.seed);

  // Working copy with dummies appended to the wire list and spliced into the
  // gate list at uniformly random slots.
  struct Item {
    WireKind kind;
    std::string label;
  };
  std::vector<Item> wires;
  for (const auto& w : circuit.wires()) wires.push_back({w.kind, w.label});
  std::vector<FredkinGate> gates = circuit.gates();
  if (params.dummy_gates > 0) {
    const auto c = static_cast<WireIndex>(wires.size());
    wires.push_back({WireKind::kAncillaOne, "dummy"});
    wires.push_back({WireKind::kAncillaOne, "dummy"});
    wires.push_back({WireKind::kAncillaZero, "dummy"});
    for (std::size_t i = 0; i < params.dummy_gates; ++i) {
      const std::size_t slot = rng.Uniform(gates.size() + 1);
      gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(slot), FredkinGate{c, c + 1, c + 2});
    }
  }

  // new_index[old] for every working wire.
  std::vector<WireIndex> new_index(wires.size());
  std::iota(new_index.begin(), new_index.end(), 0);
  if (params.rename) Shuffle(std::span(new_index), rng);
  std::vector<WireIndex> old_at(wires.size());
  for (WireIndex w = 0; w < wires.size(); ++w) old_at[new_index[w]] = w;

  Circuit out(params.rename ? "obfuscated" : circuit.name());
  std::unordered_set<std::string> used;
  for (WireIndex slot = 0; slot < wires.size(); ++slot) {
    const WireIndex old = old_at[slot];
    const Item& item = wires[old];
    if (params.rename) {
      out.AddWire(item.kind, {}, RandomId(rng, used));
    } else if (old < circuit.wire_count()) {
      out.AddWire(item.kind, item.label, circuit.wire(old).id);
    } else {
      out.AddWire(item.kind, item.label);
    }
  }
  for (auto& g : gates) g = {new_index[g.control], new_index[g.data_a], new_index[g.data_b]};
  out.SetGates(gates);
  if (params.shuffle) {
    const auto order = RandomLinearExtension(out, rng);
    std::vector<FredkinGate> shuffled;
    shuffled.reserve(order.size());
    for (std::size_t g : order) shuffled.push_back(gates[g]);
    out.SetGates(std::move(shuffled));
  }
  for (WireIndex w : circuit.inputs()) out.AddInput(new_index[w]);
  for (const auto& o : circuit.outputs()) {
    out.AddOutput(new_index[o.wire], params.rename ? std::string() : o.label);
  }

  WireMap map;
  for (WireIndex w = 0; w < circuit.wire_count(); ++w) {
    map.original_ids.push_back(circuit.wire(w).id);
    map.obfuscated_ids.push_back(out.wire(new_index[w]).id);
    map.to_obfuscated.push_back(new_index[w]);
  }
  return {std::move(out), std::move(map)};
}

double DeltaCircuit(std::span<const std::size_t> depths) {
  if (depths.size() < 2) throw std::invalid_argument("delta_circuit needs at least two circuits");
  const auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
  if (*hi == 0) throw std::invalid_argument("delta_circuit: all circuits have depth 0");
  return double(*hi - *lo) / double(*hi);
}

double DeltaCircuit(std::span<const Circuit> circuits) {
  std::vector<std::size_t> depths;
  for (const auto& c : circuits) depths.push_back(c.Depth());
  return DeltaCircuit(depths);
}

nlohmann::json WireMapToJson(const WireMap& map) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < map.original_ids.size(); ++i) {
    entries.push_back({{"original", map.original_ids[i]},
                       {"obfuscated", map.obfuscated_ids[i]},
                       {"index", map.to_obfuscated[i]}});
  }
  return {{"wires", entries}};
}

WireMap WireMapFromJson(const nlohmann::json& doc) {
  WireMap map;
  try {
    for (const auto& e : doc.at("wires")) {
      map.original_ids.push_back(e.at("original").get<std::string>());
      map.obfuscated_ids.push_back(e.at("obfuscated").get<std::string>());
      map.to_obfuscated.push_back(e.at("index").get<WireIndex>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("malformed wire map: ") + e.what());
  }
  return map;
}

}  // namespace pdfhc
