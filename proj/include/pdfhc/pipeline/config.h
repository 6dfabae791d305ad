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

#ifndef PDFHC_PIPELINE_CONFIG_H_
#define PDFHC_PIPELINE_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfhc/client/scheme.h"

namespace pdfhc {

// A pipeline phase failed; what() starts with the phase name.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& phase, const std::string& what)
      : std::runtime_error(phase + ": " + what), phase_(phase) {}
  const std::string& phase() const { return phase_; }

 private:
  std::string phase_;
};

struct ScenarioConfig {
  std::string id;
  Circuit circuit;
  BitVector inputs;
  std::string narrative;
};

// Config document (paths are relative to the document's directory):
//   {"height": 256, "width": 256, "lanes_per_scenario": 1, "real": "<id>",
//    "scenarios": [{"id", "circuit": "<catalog name>" | {"file": path} |
//                   {"expr": "...", "vars": [...]},
//                   "inputs": [ints] (+ optional "widths") | "bits": "0110",
//                   "narrative"}],
//    "covers": [paths], "seed": hex64 | int,
//    "seeds": {"lanes", "noise", "obfuscation"},
//    "obfuscation": {"enabled": true, "dummy_gates": 16},
//    "ancilla_fill": "lanes" | "all", "pad_to": m, "output_dir": path}
struct PipelineConfig {
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t lanes_per_scenario = 1;
  std::vector<ScenarioConfig> scenarios;
  std::size_t real_index = 0;
  std::vector<std::filesystem::path> covers;  // synthetic covers when empty
  Seed lane_seed{};
  Seed noise_seed{};
  Seed obfuscation_seed{};
  bool obfuscate = true;
  std::size_t dummy_gates = 16;
  AncillaFill ancilla_fill = AncillaFill::kLanes;
  std::optional<std::size_t> pad_to;
  std::filesystem::path output_dir = "out";

  std::size_t coordinate_count() const { return height * width * ImagePlane::kChannels; }
};

// Accepts 64 hex digits or a decimal integer.
Seed ParseSeed(const std::string& text);

// `master` overrides "seed"; the per-purpose seeds are derived from it unless
// "seeds" names them explicitly.
PipelineConfig PipelineConfigFromJson(const nlohmann::json& doc,
                                      const std::filesystem::path& base_dir,
                                      std::optional<Seed> master = std::nullopt);
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path,
                                  std::optional<Seed> master = std::nullopt);

// Integers are little-endian operands; without explicit widths the input
// count is split evenly.
BitVector OperandsToBits(std::span<const std::uint64_t> values, std::span<const std::size_t> widths,
                         std::size_t input_count);

}  // namespace pdfhc

#endif  // PDFHC_PIPELINE_CONFIG_H_
