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

#ifndef PDFHC_OBFUSCATION_OBFUSCATE_H_
#define PDFHC_OBFUSCATION_OBFUSCATE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfhc/circuit/circuit.h"
#include "pdfhc/common/random.h"

namespace pdfhc {

struct ObfuscationParams {
  Seed seed{};
  std::size_t dummy_gates = 0;
  bool rename = false;   // random ids, shuffled wire order, labels dropped
  bool shuffle = false;  // random linear extension of the gate order
  // Upper bound on dummy_gates; defaults to 4 * m of the input circuit.
  std::optional<std::size_t> max_dummy_gates;

  static ObfuscationParams All(const Seed& seed, std::size_t dummies) {
    return {seed, dummies, true, true, std::nullopt};
  }
};

// Where each wire of the original circuit lives in the obfuscated one.
struct WireMap {
  std::vector<std::string> original_ids;
  std::vector<std::string> obfuscated_ids;
  std::vector<WireIndex> to_obfuscated;  // indexed by original wire index

  WireIndex operator()(WireIndex original) const { return to_obfuscated.at(original); }
  bool IsIdentity() const;
};

struct ObfuscationResult {
  Circuit circuit;
  WireMap map;
};

// Renames and reorders wires, inserts dummy gates on a fresh ancilla triple,
// and re-linearizes the gate order, per `params`. Input slot order and output
// order are preserved, so Simulate(result.circuit, x) == Simulate(circuit, x).
// Throws std::invalid_argument when dummy_gates exceeds the configured bound.
ObfuscationResult Obfuscate(const Circuit& circuit, const ObfuscationParams& params);

// A gate order that keeps every pair of wire-sharing gates in relative order,
// built by repeatedly picking uniformly among the currently ready gates.
std::vector<std::size_t> RandomLinearExtension(const Circuit& circuit, SecureRng& rng);

// max |d_i - d_j| / max d. Throws std::invalid_argument on fewer than two
// entries or a zero maximum.
double DeltaCircuit(std::span<const std::size_t> depths);
double DeltaCircuit(std::span<const Circuit> circuits);

nlohmann::json WireMapToJson(const WireMap& map);
WireMap WireMapFromJson(const nlohmann::json& doc);

}  // namespace pdfhc

#endif  // PDFHC_OBFUSCATION_OBFUSCATE_H_
