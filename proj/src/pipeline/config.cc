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

#include "pdfhc/pipeline/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "pdfhc/circuit/catalog.h"
#include "pdfhc/circuit/circuit_io.h"
#include "pdfhc/circuit/expr.h"

namespace pdfhc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void Bad(const std::string& what) { throw PipelineError("config", what); }

Circuit CircuitFromSpec(const json& spec, const fs::path& base, const std::string& id) {
  if (spec.is_string()) {
    auto c = CatalogCircuit(spec.get<std::string>());
    if (!c) Bad("scenario '" + id + "': unknown catalog circuit '" + spec.get<std::string>() + "'");
    return *c;
  }
  if (!spec.is_object()) Bad("scenario '" + id + "': circuit must be a name or an object");
  if (spec.contains("file")) {
    const fs::path path = base / spec.at("file").get<std::string>();
    if (!fs::exists(path)) Bad("scenario '" + id + "': circuit file " + path.string() + " does not exist");
    return LoadCircuit(path);
  }
  if (spec.contains("expr")) {
    const auto vars = spec.at("vars").get<std::vector<std::string>>();
    return Compile(ParseExpr(spec.at("expr").get<std::string>()), vars, id);
  }
  Bad("scenario '" + id + "': circuit object needs \"file\" or \"expr\"");
}

BitVector InputsFromSpec(const json& s, const Circuit& circuit, const std::string& id) {
  BitVector bits;
  if (s.contains("bits")) {
    for (char ch : s.at("bits").get<std::string>()) {
      if (ch != '0' && ch != '1') Bad("scenario '" + id + "': bits must be 0/1 characters");
      bits.push_back(std::uint8_t(ch - '0'));
    }
  } else if (s.contains("inputs")) {
    const auto values = s.at("inputs").get<std::vector<std::uint64_t>>();
    std::vector<std::size_t> widths;
    if (s.contains("widths")) widths = s.at("widths").get<std::vector<std::size_t>>();
    try {
      bits = OperandsToBits(values, widths, circuit.input_count());
    } catch (const std::invalid_argument& e) {
      Bad("scenario '" + id + "': " + e.what());
    }
  }
  if (bits.size() != circuit.input_count()) {
    Bad("scenario '" + id + "': circuit takes " + std::to_string(circuit.input_count()) +
        " input bits, config gives " + std::to_string(bits.size()));
  }
  return bits;
}

}  // namespace

Seed ParseSeed(const std::string& text) {
  if (text.size() == 64) return SeedFromHex(text);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("seed must be 64 hex digits or a decimal integer, got '" + text + "'");
  }
  return SeedFromU64(std::stoull(text));
}

BitVector OperandsToBits(std::span<const std::uint64_t> values, std::span<const std::size_t> widths,
                         std::size_t input_count) {
  std::vector<std::size_t> w(widths.begin(), widths.end());
  if (w.empty()) {
    if (values.empty() || input_count % values.size() != 0) {
      throw std::invalid_argument(std::to_string(input_count) + " input bits do not split into " +
                                  std::to_string(values.size()) + " equal operands");
    }
    w.assign(values.size(), input_count / values.size());
  }
  if (w.size() != values.size()) throw std::invalid_argument("widths and inputs differ in length");
  BitVector bits;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (w[i] < 64 && values[i] >> w[i] != 0) {
      throw std::invalid_argument("operand " + std::to_string(values[i]) + " does not fit in " +
                                  std::to_string(w[i]) + " bits");
    }
    const auto part = BitsFromUint(values[i], w[i]);
    bits.insert(bits.end(), part.begin(), part.end());
  }
  return bits;
}

PipelineConfig PipelineConfigFromJson(const json& doc, const fs::path& base,
                                      std::optional<Seed> master) {
  PipelineConfig cfg;
  try {
    cfg.height = doc.value("height", cfg.height);
    cfg.width = doc.value("width", cfg.width);
    cfg.lanes_per_scenario = doc.value("lanes_per_scenario", cfg.lanes_per_scenario);
    if (!doc.contains("scenarios") || doc.at("scenarios").empty()) Bad("no scenarios");
    for (const auto& s : doc.at("scenarios")) {
      ScenarioConfig sc;
      sc.id = s.at("id").get<std::string>();
      sc.circuit = CircuitFromSpec(s.at("circuit"), base, sc.id);
      sc.inputs = InputsFromSpec(s, sc.circuit, sc.id);
      sc.narrative = s.value("narrative", std::string());
      cfg.scenarios.push_back(std::move(sc));
    }
    const std::string real = doc.value("real", cfg.scenarios.front().id);
    const auto it = std::find_if(cfg.scenarios.begin(), cfg.scenarios.end(),
                                 [&](const auto& s) { return s.id == real; });
    if (it == cfg.scenarios.end()) Bad("real scenario '" + real + "' is not listed");
    cfg.real_index = std::size_t(it - cfg.scenarios.begin());

    if (doc.contains("covers")) {
      for (const auto& c : doc.at("covers")) {
        const fs::path path = base / c.get<std::string>();
        if (!fs::exists(path)) Bad("cover " + path.string() + " does not exist");
        cfg.covers.push_back(path);
      }
    }
    Seed root = SeedFromU64(0);
    if (doc.contains("seed")) {
      const auto& s = doc.at("seed");
      root = ParseSeed(s.is_string() ? s.get<std::string>() : std::to_string(s.get<std::uint64_t>()));
    }
    if (master) root = *master;
    cfg.lane_seed = DeriveSeed(root, "lanes");
    cfg.noise_seed = DeriveSeed(root, "noise");
    cfg.obfuscation_seed = DeriveSeed(root, "obfuscation");
    if (doc.contains("seeds") && !master) {
      const auto& seeds = doc.at("seeds");
      if (seeds.contains("lanes")) cfg.lane_seed = ParseSeed(seeds.at("lanes").get<std::string>());
      if (seeds.contains("noise")) cfg.noise_seed = ParseSeed(seeds.at("noise").get<std::string>());
      if (seeds.contains("obfuscation")) {
        cfg.obfuscation_seed = ParseSeed(seeds.at("obfuscation").get<std::string>());
      }
    }
    if (doc.contains("obfuscation")) {
      const auto& o = doc.at("obfuscation");
      cfg.obfuscate = o.value("enabled", true);
      cfg.dummy_gates = o.value("dummy_gates", cfg.dummy_gates);
    }
    const std::string fill = doc.value("ancilla_fill", std::string("lanes"));
    if (fill == "lanes") {
      cfg.ancilla_fill = AncillaFill::kLanes;
    } else if (fill == "all") {
      cfg.ancilla_fill = AncillaFill::kAllCoordinates;
    } else {
      Bad("ancilla_fill must be \"lanes\" or \"all\"");
    }
    if (doc.contains("pad_to")) cfg.pad_to = doc.at("pad_to").get<std::size_t>();
    cfg.output_dir = base / doc.value("output_dir", std::string("out"));
  } catch (const json::exception& e) {
    Bad(e.what());
  } catch (const std::invalid_argument& e) {
    Bad(e.what());
  } catch (const CircuitError& e) {
    Bad(e.what());
  }
  if (cfg.scenarios.size() * cfg.lanes_per_scenario * 100 > cfg.coordinate_count()) {
    Bad("L * rho = " + std::to_string(cfg.scenarios.size() * cfg.lanes_per_scenario) +
        " exceeds n / 100 for a " + std::to_string(cfg.height) + "x" + std::to_string(cfg.width) +
        " image");
  }
  return cfg;
}

PipelineConfig LoadPipelineConfig(const fs::path& path, std::optional<Seed> master) {
  std::ifstream in(path);
  if (!in) throw PipelineError("config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw PipelineError("config", path.string() + ": " + e.what());
  }
  return PipelineConfigFromJson(doc, path.parent_path(), master);
}

}  // namespace pdfhc
