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

#include "pdfhc/circuit/circuit_io.h"

#include <fstream>
#include <sstream>

namespace pdfhc {

using nlohmann::json;

json CircuitToJson(const Circuit& circuit) {
  json wires = json::array();
  for (const auto& w : circuit.wires()) {
    wires.push_back({{"id", w.id}, {"kind", WireKindName(w.kind)}, {"label", w.label}});
  }
  const auto id = [&](WireIndex w) { return circuit.wire(w).id; };
  json gates = json::array();
  for (const auto& g : circuit.gates()) {
    gates.push_back({{"c", id(g.control)}, {"a", id(g.data_a)}, {"b", id(g.data_b)}});
  }
  json inputs = json::array();
  for (WireIndex w : circuit.inputs()) inputs.push_back(id(w));
  json outputs = json::array();
  for (const auto& o : circuit.outputs()) outputs.push_back({{"wire", id(o.wire)}, {"label", o.label}});
  return {{"name", circuit.name()},
          {"wires", std::move(wires)},
          {"gates", std::move(gates)},
          {"inputs", std::move(inputs)},
          {"outputs", std::move(outputs)}};
}

Circuit CircuitFromJson(const json& doc) {
  try {
    Circuit circuit(doc.at("name").get<std::string>());
    for (const auto& w : doc.at("wires")) {
      const auto kind_name = w.at("kind").get<std::string>();
      const auto kind = ParseWireKind(kind_name);
      if (!kind) throw CircuitError("unknown wire kind '" + kind_name + "'");
      circuit.AddWire(*kind, w.value("label", std::string{}), w.at("id").get<std::string>());
    }
    const auto lookup = [&](const json& ref) {
      const auto id = ref.get<std::string>();
      const auto w = circuit.FindWire(id);
      if (!w) throw CircuitError("reference to unknown wire '" + id + "'");
      return *w;
    };
    std::vector<FredkinGate> gates;
    gates.reserve(doc.at("gates").size());
    for (const auto& g : doc.at("gates")) {
      gates.push_back({lookup(g.at("c")), lookup(g.at("a")), lookup(g.at("b"))});
    }
    circuit.SetGates(std::move(gates));
    for (const auto& i : doc.at("inputs")) circuit.AddInput(lookup(i));
    for (const auto& o : doc.at("outputs")) {
      circuit.AddOutput(lookup(o.at("wire")), o.value("label", std::string{}));
    }
    circuit.Validate();
    return circuit;
  } catch (const json::exception& e) {
    throw CircuitError(std::string("malformed circuit document: ") + e.what());
  }
}

std::string SerializeCircuit(const Circuit& circuit) { return CircuitToJson(circuit).dump(1) + "\n"; }

Circuit ParseCircuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CircuitError(std::string("circuit file is not valid JSON: ") + e.what());
  }
  return CircuitFromJson(doc);
}

void SaveCircuit(const Circuit& circuit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << SerializeCircuit(circuit);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Circuit LoadCircuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseCircuit(ss.str());
}

}  // namespace pdfhc
