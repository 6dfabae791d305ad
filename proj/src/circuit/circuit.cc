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

#include "pdfhc/circuit/circuit.h"

#include <algorithm>

namespace pdfhc {

std::string_view WireKindName(WireKind kind) {
  switch (kind) {
    case WireKind::kInput:
      return "input";
    case WireKind::kAncillaZero:
      return "ancilla_zero";
    case WireKind::kAncillaOne:
      return "ancilla_one";
    case WireKind::kInternal:
      return "internal";
  }
  return "internal";
}

std::optional<WireKind> ParseWireKind(std::string_view name) {
  if (name == "input") return WireKind::kInput;
  if (name == "ancilla_zero") return WireKind::kAncillaZero;
  if (name == "ancilla_one") return WireKind::kAncillaOne;
  if (name == "internal") return WireKind::kInternal;
  return std::nullopt;
}

WireIndex Circuit::AddWire(WireKind kind, std::string label, std::string id) {
  const auto index = static_cast<WireIndex>(wires_.size());
  if (id.empty()) {
    id = "w" + std::to_string(index);
    // Generated ids may collide with caller-chosen ones; probe forward.
    for (std::size_t k = 0; index_.contains(id); ++k) {
      id = "w" + std::to_string(index) + "_" + std::to_string(k);
    }
  }
  if (!index_.emplace(id, index).second) {
    throw CircuitError("duplicate wire id '" + id + "'");
  }
  wires_.push_back(Wire{std::move(id), kind, std::move(label)});
  return index;
}

void Circuit::CheckWire(WireIndex w, std::string_view what) const {
  if (w >= wires_.size()) {
    throw CircuitError(std::string(what) + " references wire index " + std::to_string(w) +
                       " but the circuit has " + std::to_string(wires_.size()) + " wires");
  }
}

void Circuit::CheckGate(const FredkinGate& gate) const {
  CheckWire(gate.control, "gate control");
  CheckWire(gate.data_a, "gate data_a");
  CheckWire(gate.data_b, "gate data_b");
  if (gate.control == gate.data_a || gate.control == gate.data_b ||
      gate.data_a == gate.data_b) {
    throw CircuitError("gate wires must be pairwise distinct (" + wires_[gate.control].id +
                       ", " + wires_[gate.data_a].id + ", " + wires_[gate.data_b].id + ")");
  }
}

void Circuit::AddGate(WireIndex control, WireIndex data_a, WireIndex data_b) {
  const FredkinGate gate{control, data_a, data_b};
  CheckGate(gate);
  gates_.push_back(gate);
}

void Circuit::SetGates(std::vector<FredkinGate> gates) {
  for (const auto& g : gates) CheckGate(g);
  gates_ = std::move(gates);
}

void Circuit::AddInput(WireIndex wire) {
  CheckWire(wire, "input");
  if (wires_[wire].kind != WireKind::kInput) {
    throw CircuitError("input slot wire '" + wires_[wire].id + "' is not of kind input");
  }
  if (std::find(inputs_.begin(), inputs_.end(), wire) != inputs_.end()) {
    throw CircuitError("wire '" + wires_[wire].id + "' is already an input slot");
  }
  inputs_.push_back(wire);
}

void Circuit::AddOutput(WireIndex wire, std::string label) {
  CheckWire(wire, "output");
  outputs_.push_back(OutputBinding{wire, std::move(label)});
}

std::optional<WireIndex> Circuit::FindWire(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Circuit::Depth() const {
  // level[w] = depth of the last gate that touched wire w.
  std::vector<std::size_t> level(wires_.size(), 0);
  std::size_t depth = 0;
  for (const auto& g : gates_) {
    const std::size_t d = 1 + std::max({level[g.control], level[g.data_a], level[g.data_b]});
    level[g.control] = level[g.data_a] = level[g.data_b] = d;
    depth = std::max(depth, d);
  }
  return depth;
}

void Circuit::Validate() const {
  if (index_.size() != wires_.size()) throw CircuitError("wire ids are not unique");
  for (const auto& g : gates_) CheckGate(g);
  std::vector<int> slots(wires_.size(), 0);
  for (WireIndex w : inputs_) {
    CheckWire(w, "input");
    ++slots[w];
  }
  for (std::size_t w = 0; w < wires_.size(); ++w) {
    const bool is_input = wires_[w].kind == WireKind::kInput;
    if (is_input && slots[w] != 1) {
      throw CircuitError("input wire '" + wires_[w].id + "' must be bound to exactly one input slot");
    }
    if (!is_input && slots[w] != 0) {
      throw CircuitError("wire '" + wires_[w].id + "' is an input slot but not of kind input");
    }
  }
  for (const auto& o : outputs_) CheckWire(o.wire, "output");
}

BitVector InitialState(const Circuit& circuit, std::span<const std::uint8_t> input_bits) {
  if (input_bits.size() != circuit.input_count()) {
    throw CircuitError("circuit '" + circuit.name() + "' expects " +
                       std::to_string(circuit.input_count()) + " input bits, got " +
                       std::to_string(input_bits.size()));
  }
  BitVector state(circuit.wire_count());
  for (std::size_t w = 0; w < state.size(); ++w) state[w] = InitialValue(circuit.wires()[w].kind);
  for (std::size_t i = 0; i < input_bits.size(); ++i) {
    state[circuit.inputs()[i]] = input_bits[i] & 1;
  }
  return state;
}

void ApplyGates(const Circuit& circuit, std::span<std::uint8_t> state) {
  for (const auto& g : circuit.gates()) {
    const auto out = FredkinApply(state[g.control], state[g.data_a], state[g.data_b]);
    state[g.data_a] = out[1];
    state[g.data_b] = out[2];
  }
}

BitVector SimulateState(const Circuit& circuit, std::span<const std::uint8_t> input_bits) {
  BitVector state = InitialState(circuit, input_bits);
  ApplyGates(circuit, state);
  return state;
}

BitVector Simulate(const Circuit& circuit, std::span<const std::uint8_t> input_bits) {
  const BitVector state = SimulateState(circuit, input_bits);
  BitVector out;
  out.reserve(circuit.outputs().size());
  for (const auto& o : circuit.outputs()) out.push_back(state[o.wire]);
  return out;
}

Circuit PadTo(const Circuit& circuit, std::size_t target_gates) {
  if (target_gates < circuit.gate_count()) {
    throw CircuitError("cannot pad circuit '" + circuit.name() + "' with " +
                       std::to_string(circuit.gate_count()) + " gates down to " +
                       std::to_string(target_gates));
  }
  Circuit padded = circuit;
  if (target_gates == circuit.gate_count()) return padded;
  std::string prefix = "pad";
  for (int k = 0; padded.FindWire(prefix + ".c") || padded.FindWire(prefix + ".a") ||
                  padded.FindWire(prefix + ".b");
       ++k) {
    prefix = "pad" + std::to_string(k);
  }
  const WireIndex c = padded.AddWire(WireKind::kAncillaOne, "pad", prefix + ".c");
  const WireIndex a = padded.AddWire(WireKind::kAncillaOne, "pad", prefix + ".a");
  const WireIndex b = padded.AddWire(WireKind::kAncillaZero, "pad", prefix + ".b");
  while (padded.gate_count() < target_gates) padded.AddGate(c, a, b);
  return padded;
}

WireIndex AppendCircuit(Circuit& into, const Circuit& part, std::string_view id_prefix) {
  const auto base = static_cast<WireIndex>(into.wire_count());
  for (const auto& w : part.wires()) {
    into.AddWire(w.kind, w.label, std::string(id_prefix) + w.id);
  }
  std::vector<FredkinGate> gates = into.gates();
  gates.reserve(gates.size() + part.gate_count());
  for (const auto& g : part.gates()) {
    gates.push_back({g.control + base, g.data_a + base, g.data_b + base});
  }
  into.SetGates(std::move(gates));
  for (WireIndex w : part.inputs()) into.AddInput(w + base);
  for (const auto& o : part.outputs()) into.AddOutput(o.wire + base, o.label);
  return base;
}

}  // namespace pdfhc
