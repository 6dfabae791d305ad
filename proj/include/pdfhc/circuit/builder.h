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

#ifndef PDFHC_CIRCUIT_BUILDER_H_
#define PDFHC_CIRCUIT_BUILDER_H_

#include <span>
#include <string>
#include <vector>

#include "pdfhc/circuit/circuit.h"

namespace pdfhc {

// Emits Fredkin-gate constructions with fresh ancillae. Methods named *Into
// destroy the value on the wire passed as `data` (it ends up holding
// garbage); all other methods leave their operands intact.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name) : circuit_(std::move(name)) {}

  WireIndex Input(std::string label);
  WireIndex Constant(bool value, std::string label = {});
  void Gate(WireIndex control, WireIndex data_a, WireIndex data_b);
  void Output(WireIndex wire, std::string label);

  struct Fanout {
    WireIndex copy;
    WireIndex negated;
  };
  // F(x, 0, 1) = (x, x, ~x).
  Fanout Copy(WireIndex x);
  WireIndex Not(WireIndex x) { return Copy(x).negated; }

  // F(c, d, 0) = (c, ~c & d, c & d): the conjunction lands on the fresh wire.
  WireIndex AndInto(WireIndex control, WireIndex data);
  WireIndex And(WireIndex a, WireIndex b) { return AndInto(a, Copy(b).copy); }

  // F(c, 1, d) = (c, ., c | d): the disjunction lands on d's wire.
  WireIndex OrInto(WireIndex control, WireIndex data);

  struct XorPair {
    WireIndex value;  // a ^ b
    WireIndex complement;
  };
  // Copy b to (b, ~b), then swap the pair under a.
  XorPair Xor(WireIndex a, WireIndex b);

  // F(s, when0, when1): returns when0's wire, now holding s ? when1 : when0.
  // Both data wires are consumed.
  WireIndex MuxInto(WireIndex select, WireIndex when0, WireIndex when1);

  struct SumCarry {
    WireIndex sum;
    WireIndex carry;
  };
  // `a` is consumed; b is kept.
  SumCarry HalfAddInto(WireIndex a, WireIndex b);
  // `a` and `carry_in` are consumed; b is kept.
  SumCarry FullAddInto(WireIndex a, WireIndex b, WireIndex carry_in);

  // Ripple-carry sum of two little-endian vectors of equal width; returns
  // width + 1 bits. Consumes `a`.
  std::vector<WireIndex> AddInto(std::span<const WireIndex> a, std::span<const WireIndex> b);

  // Carry-out of a + ~b + 1, i.e. 1 iff a >= b (unsigned). Consumes `a`.
  WireIndex GreaterEqualInto(std::span<const WireIndex> a, std::span<const WireIndex> b);

  // a - b mod 2^width and the no-borrow flag (a >= b). Keeps both operands.
  struct Difference {
    std::vector<WireIndex> bits;
    WireIndex no_borrow;
  };
  Difference Subtract(std::span<const WireIndex> a, std::span<const WireIndex> b);

  const Circuit& circuit() const { return circuit_; }
  Circuit Build() && { return std::move(circuit_); }

 private:
  Circuit circuit_;
};

}  // namespace pdfhc

#endif  // PDFHC_CIRCUIT_BUILDER_H_
