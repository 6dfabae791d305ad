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

#ifndef PDFHC_CIRCUIT_CIRCUIT_H_
#define PDFHC_CIRCUIT_CIRCUIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdfhc/common/bits.h"

namespace pdfhc {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WireKind : std::uint8_t { kInput, kAncillaZero, kAncillaOne, kInternal };

std::string_view WireKindName(WireKind kind);
std::optional<WireKind> ParseWireKind(std::string_view name);

// Value a non-input wire holds before the first gate.
constexpr std::uint8_t InitialValue(WireKind kind) {
  return kind == WireKind::kAncillaOne ? 1 : 0;
}

constexpr bool IsAncilla(WireKind kind) {
  return kind == WireKind::kAncillaZero || kind == WireKind::kAncillaOne;
}

using WireIndex = std::uint32_t;

struct Wire {
  std::string id;
  WireKind kind = WireKind::kInternal;
  std::string label;

  friend bool operator==(const Wire&, const Wire&) = default;
};

// Controlled swap: data_a and data_b are exchanged when control is 1.
struct FredkinGate {
  WireIndex control = 0;
  WireIndex data_a = 0;
  WireIndex data_b = 0;

  bool Touches(WireIndex w) const { return w == control || w == data_a || w == data_b; }
  friend bool operator==(const FredkinGate&, const FredkinGate&) = default;
};

struct OutputBinding {
  WireIndex wire = 0;
  std::string label;

  friend bool operator==(const OutputBinding&, const OutputBinding&) = default;
};

// Branch-free Fredkin step on single bits: (c, x, y) -> (c, y, x) iff c = 1.
constexpr std::array<std::uint8_t, 3> FredkinApply(std::uint8_t c, std::uint8_t x,
                                                   std::uint8_t y) {
  const std::uint8_t d = static_cast<std::uint8_t>((x ^ y) & c);
  return {c, static_cast<std::uint8_t>(x ^ d), static_cast<std::uint8_t>(y ^ d)};
}

// A reversible circuit: wires, an ordered gate list, and the input/output
// bindings. Wires are addressed by dense index internally and by string id in
// files; ids are unique.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::string name) : name_(std::move(name)) {}

  // An empty id is replaced by "w<index>". Throws CircuitError on a
  // duplicate id.
  WireIndex AddWire(WireKind kind, std::string label = {}, std::string id = {});
  void AddGate(WireIndex control, WireIndex data_a, WireIndex data_b);
  void AddGate(const FredkinGate& gate) { AddGate(gate.control, gate.data_a, gate.data_b); }
  // The wire must have kind kInput and must not already be an input slot.
  void AddInput(WireIndex wire);
  void AddOutput(WireIndex wire, std::string label = {});

  // Replaces the whole gate list. Every gate is re-validated.
  void SetGates(std::vector<FredkinGate> gates);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<Wire>& wires() const { return wires_; }
  const Wire& wire(WireIndex w) const { return wires_.at(w); }
  const std::vector<FredkinGate>& gates() const { return gates_; }
  const std::vector<WireIndex>& inputs() const { return inputs_; }
  const std::vector<OutputBinding>& outputs() const { return outputs_; }

  std::size_t wire_count() const { return wires_.size(); }
  std::size_t gate_count() const { return gates_.size(); }
  std::size_t input_count() const { return inputs_.size(); }

  std::optional<WireIndex> FindWire(std::string_view id) const;

  // Longest chain of gates where consecutive gates share a wire.
  std::size_t Depth() const;

  // Full structural check, used after parsing: every kInput wire is bound to
  // exactly one input slot, gates and outputs are in range, ids unique.
  void Validate() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.name_ == b.name_ && a.wires_ == b.wires_ && a.gates_ == b.gates_ &&
           a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_;
  }

 private:
  void CheckWire(WireIndex w, std::string_view what) const;
  void CheckGate(const FredkinGate& gate) const;

  std::string name_;
  std::vector<Wire> wires_;
  std::vector<FredkinGate> gates_;
  std::vector<WireIndex> inputs_;
  std::vector<OutputBinding> outputs_;
  std::unordered_map<std::string, WireIndex> index_;
};

// Wire values before the first gate: inputs from `input_bits`, constants for
// ancillae, zero for internal wires. Throws CircuitError on arity mismatch.
BitVector InitialState(const Circuit& circuit, std::span<const std::uint8_t> input_bits);

// Applies every gate in order to `state` (one entry per wire).
void ApplyGates(const Circuit& circuit, std::span<std::uint8_t> state);

// Final value of every wire.
BitVector SimulateState(const Circuit& circuit, std::span<const std::uint8_t> input_bits);

// Bits at the output wires, in output order.
BitVector Simulate(const Circuit& circuit, std::span<const std::uint8_t> input_bits);

// Appends dummy gates until the circuit has `target_gates` gates. Dummies act
// on a fresh (control = 1, pair = (1, 0)) ancilla triple so they perform a real
// swap without touching any existing wire. Throws CircuitError when the target
// is below the current gate count.
Circuit PadTo(const Circuit& circuit, std::size_t target_gates);

// Copies every wire, gate, input and output of `part` into `into`, prefixing
// ids with `id_prefix`. Returns the index of part's wire 0 inside `into`.
WireIndex AppendCircuit(Circuit& into, const Circuit& part, std::string_view id_prefix);

}  // namespace pdfhc

#endif  // PDFHC_CIRCUIT_CIRCUIT_H_
