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

#ifndef PDFHC_CIRCUIT_CIRCUIT_IO_H_
#define PDFHC_CIRCUIT_CIRCUIT_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pdfhc/circuit/circuit.h"

namespace pdfhc {

// Circuit document:
//   {"name": ..., "wires": [{"id", "kind", "label"}], "gates": [{"c", "a", "b"}],
//    "inputs": [wire id, ...], "outputs": [{"wire", "label"}]}
// Gates, inputs and outputs reference wires by id.
nlohmann::json CircuitToJson(const Circuit& circuit);
Circuit CircuitFromJson(const nlohmann::json& doc);

std::string SerializeCircuit(const Circuit& circuit);
Circuit ParseCircuit(std::string_view text);

void SaveCircuit(const Circuit& circuit, const std::filesystem::path& path);
Circuit LoadCircuit(const std::filesystem::path& path);

}  // namespace pdfhc

#endif  // PDFHC_CIRCUIT_CIRCUIT_IO_H_
