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

#ifndef PDFHC_CIRCUIT_CATALOG_H_
#define PDFHC_CIRCUIT_CATALOG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdfhc/circuit/circuit.h"

namespace pdfhc {

// Input bits are little-endian per operand, operands in the order listed.
Circuit Threshold3Circuit();       // x[3] -> x > 3
Circuit SmallExprCircuit();        // (A & C) | (!A & B) | (!B & !C)
Circuit Adder4Circuit();           // a[4], b[4] -> s[5] = a + b
Circuit Multiplier8Circuit();      // a[8], b[8] -> p[16] = a * b
Circuit Comparator8Circuit();      // v[8], t[8] -> v > t
Circuit BrightnessCheckCircuit();  // level[8], threshold[8] -> level >= threshold
Circuit ColorBalanceCheckCircuit();  // r[8], b[8] -> |r - b| < 16
Circuit NoiseLevelCheckCircuit();  // flags[16] -> popcount(flags) > 8

// Greater-than against a constant, built from the generic comparator with the
// constant operand on ancilla wires.
Circuit ThresholdCircuit(unsigned width, unsigned constant);

struct CatalogEntry {
  std::string name;
  std::string description;
  bool decoy = false;  // image-quality cover checks
  Circuit circuit;
};

std::vector<CatalogEntry> StandardCircuits();

std::optional<Circuit> CatalogCircuit(std::string_view name);

}  // namespace pdfhc

#endif  // PDFHC_CIRCUIT_CATALOG_H_
