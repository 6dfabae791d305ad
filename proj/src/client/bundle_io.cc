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

#include "pdfhc/client/bundle_io.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "pdfhc/circuit/circuit_io.h"

namespace pdfhc {

using nlohmann::json;

json BitsToJson(const BitVector& bits) { return {{"bits", bits.size()}, {"hex", BitsToHex(bits)}}; }

BitVector BitsFromJson(const json& doc) {
  return BitsFromHex(doc.at("hex").get<std::string>(), doc.at("bits").get<std::size_t>());
}

namespace {

json LanesToJson(const std::vector<std::size_t>& lanes, std::size_t width) {
  json out = json::array();
  for (std::size_t p : lanes) {
    const std::size_t px = p / ImagePlane::kChannels;
    out.push_back({px / width, px % width, p % ImagePlane::kChannels});
  }
  return out;
}

std::vector<std::size_t> LanesFromJson(const json& doc, std::size_t height, std::size_t width) {
  std::vector<std::size_t> lanes;
  for (const auto& t : doc) {
    const auto r = t.at(0).get<std::size_t>(), c = t.at(1).get<std::size_t>(),
               k = t.at(2).get<std::size_t>();
    if (r >= height || c >= width || k >= ImagePlane::kChannels) {
      throw ClientError("lane coordinate out of bounds");
    }
    lanes.push_back((r * width + c) * ImagePlane::kChannels + k);
  }
  return lanes;
}

template <typename F>
auto Guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ClientError(std::string("malformed ") + what + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ClientError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json BundleToJson(const ScenarioBundle& b) {
  json scenarios = json::array();
  for (const auto& s : b.scenarios) {
    json outputs = json::array();
    for (const auto& y : s.outputs) outputs.push_back(BitsToJson(y));
    scenarios.push_back({{"id", s.id},
                         {"narrative", s.narrative},
                         {"slot", s.slot},
                         {"inputs", BitsToJson(s.inputs)},
                         {"lanes", LanesToJson(s.lanes, b.width)},
                         {"outputs", outputs}});
  }
  json slots = json::array();
  for (const auto& c : b.slots) slots.push_back(CircuitToJson(c));
  json doc = {
      {"format", "pdfhc-bundle-1"},
      {"height", b.height},
      {"width", b.width},
      {"lanes_per_scenario", b.lanes_per_scenario},
      {"real_index", b.real_index},
      {"seed", SeedToHex(b.seed)},
      {"revelation_order", b.revelation_order},
      {"slots", slots},
      {"slot_base", b.slot_base},
      {"scenarios", scenarios},
      {"evaluated", CircuitToJson(b.evaluated)},
      {"plane_of", b.plane_of},
      {"coercion",
       {{"rounds_elapsed", b.coercion.rounds_elapsed},
        {"revealed", b.coercion.revealed},
        {"budget", b.coercion.budget},
        {"claimed_exhausted", b.coercion.claimed_exhausted}}},
  };
  if (b.wire_map) doc["wire_map"] = WireMapToJson(*b.wire_map);
  return doc;
}

ScenarioBundle BundleFromJson(const json& doc) {
  return Guarded("bundle", [&] {
    ScenarioBundle b;
    b.height = doc.at("height").get<std::size_t>();
    b.width = doc.at("width").get<std::size_t>();
    b.lanes_per_scenario = doc.at("lanes_per_scenario").get<std::size_t>();
    b.real_index = doc.at("real_index").get<std::size_t>();
    b.seed = SeedFromHex(doc.at("seed").get<std::string>());
    b.revelation_order = doc.at("revelation_order").get<std::vector<std::size_t>>();
    for (const auto& c : doc.at("slots")) b.slots.push_back(CircuitFromJson(c));
    b.slot_base = doc.at("slot_base").get<std::vector<WireIndex>>();
    if (b.slot_base.size() != b.slots.size()) throw ClientError("slot table is inconsistent");
    b.combined = Circuit("combined");
    for (std::size_t k = 0; k < b.slots.size(); ++k) {
      if (AppendCircuit(b.combined, b.slots[k], "s" + std::to_string(k) + ".") != b.slot_base[k]) {
        throw ClientError("slot table is inconsistent");
      }
    }
    for (const auto& js : doc.at("scenarios")) {
      Scenario s;
      s.id = js.at("id").get<std::string>();
      s.narrative = js.at("narrative").get<std::string>();
      s.slot = js.at("slot").get<std::size_t>();
      if (s.slot >= b.slots.size()) throw ClientError("scenario slot out of range");
      s.circuit = b.slots[s.slot];
      s.inputs = BitsFromJson(js.at("inputs"));
      if (s.inputs.size() != s.circuit.input_count()) throw ClientError("scenario input width mismatch");
      s.lanes = LanesFromJson(js.at("lanes"), b.height, b.width);
      for (const auto& y : js.at("outputs")) s.outputs.push_back(BitsFromJson(y));
      b.scenarios.push_back(std::move(s));
    }
    if (b.real_index >= b.scenarios.size()) throw ClientError("real scenario index out of range");
    b.evaluated = CircuitFromJson(doc.at("evaluated"));
    b.plane_of = doc.at("plane_of").get<std::vector<WireIndex>>();
    if (b.plane_of.size() != b.combined.wire_count()) throw ClientError("plane table is inconsistent");
    for (WireIndex p : b.plane_of) {
      if (p >= b.evaluated.wire_count()) throw ClientError("plane table points past the circuit");
    }
    const auto& co = doc.at("coercion");
    b.coercion.rounds_elapsed = co.at("rounds_elapsed").get<std::size_t>();
    b.coercion.revealed = co.at("revealed").get<std::vector<std::string>>();
    b.coercion.budget = co.at("budget").get<std::size_t>();
    b.coercion.claimed_exhausted = co.at("claimed_exhausted").get<bool>();
    if (doc.contains("wire_map")) b.wire_map = WireMapFromJson(doc.at("wire_map"));
    return b;
  });
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text, bool secret) {
  if (secret) {
    // Create with 0600 up front so the secret never exists world-readable.
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd < 0) throw std::runtime_error("cannot create " + path.string());
    ::fchmod(fd, 0600);
    ::close(fd);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void SaveBundle(const ScenarioBundle& bundle, const std::filesystem::path& path) {
  WriteTextFile(path, BundleToJson(bundle).dump(1), true);
}

ScenarioBundle LoadBundle(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  return Guarded("bundle", [&] { return BundleFromJson(json::parse(text)); });
}

json RevelationToJson(const Revelation& rev, std::size_t width) {
  return {{"scenario", rev.scenario_id},
          {"narrative", rev.narrative},
          {"circuit", CircuitToJson(rev.circuit)},
          {"inputs", BitsToJson(rev.inputs)},
          {"output", BitsToJson(rev.output)},
          {"lanes", LanesToJson(rev.lanes, width)},
          {"planes", rev.binding}};
}

Revelation RevelationFromJson(const json& doc, std::size_t height, std::size_t width) {
  return Guarded("revelation", [&] {
    Revelation rev;
    rev.scenario_id = doc.at("scenario").get<std::string>();
    rev.narrative = doc.at("narrative").get<std::string>();
    rev.circuit = CircuitFromJson(doc.at("circuit"));
    rev.inputs = BitsFromJson(doc.at("inputs"));
    rev.output = BitsFromJson(doc.at("output"));
    rev.lanes = LanesFromJson(doc.at("lanes"), height, width);
    rev.binding = doc.at("planes").get<std::vector<WireIndex>>();
    return rev;
  });
}

}  // namespace pdfhc
