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

#include "pdfhc/circuit/builder.h"

namespace pdfhc {

WireIndex CircuitBuilder::Input(std::string label) {
  const WireIndex w = circuit_.AddWire(WireKind::kInput, std::move(label));
  circuit_.AddInput(w);
  return w;
}

WireIndex CircuitBuilder::Constant(bool value, std::string label) {
  return circuit_.AddWire(value ? WireKind::kAncillaOne : WireKind::kAncillaZero,
                          std::move(label));
}

void CircuitBuilder::Gate(WireIndex control, WireIndex data_a, WireIndex data_b) {
  circuit_.AddGate(control, data_a, data_b);
}

void CircuitBuilder::Output(WireIndex wire, std::string label) {
  circuit_.AddOutput(wire, std::move(label));
}

CircuitBuilder::Fanout CircuitBuilder::Copy(WireIndex x) {
  const WireIndex zero = Constant(false);
  const WireIndex one = Constant(true);
  Gate(x, zero, one);
  return {zero, one};
}

WireIndex CircuitBuilder::AndInto(WireIndex control, WireIndex data) {
  const WireIndex zero = Constant(false);
  Gate(control, data, zero);
  return zero;
}

WireIndex CircuitBuilder::OrInto(WireIndex control, WireIndex data) {
  const WireIndex one = Constant(true);
  Gate(control, one, data);
  return data;
}

CircuitBuilder::XorPair CircuitBuilder::Xor(WireIndex a, WireIndex b) {
  const Fanout f = Copy(b);
  Gate(a, f.copy, f.negated);
  return {f.copy, f.negated};
}

WireIndex CircuitBuilder::MuxInto(WireIndex select, WireIndex when0, WireIndex when1) {
  Gate(select, when0, when1);
  return when0;
}

CircuitBuilder::SumCarry CircuitBuilder::HalfAddInto(WireIndex a, WireIndex b) {
  const WireIndex sum = Xor(a, b).value;
  const WireIndex carry = AndInto(b, a);
  return {sum, carry};
}

CircuitBuilder::SumCarry CircuitBuilder::FullAddInto(WireIndex a, WireIndex b,
                                                     WireIndex carry_in) {
  const WireIndex propagate = Xor(a, b).value;
  const WireIndex sum = Xor(carry_in, propagate).value;
  // Majority: propagate ? carry_in : a.
  const WireIndex carry = MuxInto(propagate, a, carry_in);
  return {sum, carry};
}

std::vector<WireIndex> CircuitBuilder::AddInto(std::span<const WireIndex> a,
                                               std::span<const WireIndex> b) {
  if (a.size() != b.size() || a.empty()) {
    throw CircuitError("AddInto needs two non-empty operands of equal width");
  }
  std::vector<WireIndex> out;
  out.reserve(a.size() + 1);
  SumCarry sc = HalfAddInto(a[0], b[0]);
  out.push_back(sc.sum);
  for (std::size_t i = 1; i < a.size(); ++i) {
    sc = FullAddInto(a[i], b[i], sc.carry);
    out.push_back(sc.sum);
  }
  out.push_back(sc.carry);
  return out;
}

WireIndex CircuitBuilder::GreaterEqualInto(std::span<const WireIndex> a,
                                           std::span<const WireIndex> b) {
  if (a.size() != b.size() || a.empty()) {
    throw CircuitError("GreaterEqualInto needs two non-empty operands of equal width");
  }
  WireIndex carry = Constant(true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const WireIndex not_b = Not(b[i]);
    const WireIndex propagate = Xor(a[i], not_b).value;
    carry = MuxInto(propagate, a[i], carry);
  }
  return carry;
}

CircuitBuilder::Difference CircuitBuilder::Subtract(std::span<const WireIndex> a,
                                                    std::span<const WireIndex> b) {
  if (a.size() != b.size() || a.empty()) {
    throw CircuitError("Subtract needs two non-empty operands of equal width");
  }
  Difference diff;
  WireIndex carry = Constant(true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const WireIndex a_copy = Copy(a[i]).copy;
    const WireIndex not_b = Not(b[i]);
    const SumCarry sc = FullAddInto(a_copy, not_b, carry);
    diff.bits.push_back(sc.sum);
    carry = sc.carry;
  }
  diff.no_borrow = carry;
  return diff;
}

}  // namespace pdfhc
