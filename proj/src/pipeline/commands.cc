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

#include "pdfhc/pipeline/commands.h"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "pdfhc/circuit/circuit_io.h"
#include "pdfhc/client/bundle_io.h"

namespace pdfhc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kPlanesFormat = "pdfhc-planes-1";

template <typename F>
auto Phase(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

double MsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string PlaneFileName(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "plane_%04zu.png", i);
  return buf;
}

std::vector<ImagePlane> LoadCovers(const PipelineConfig& cfg) {
  std::vector<ImagePlane> covers;
  for (const auto& path : cfg.covers) covers.push_back(LoadPng(path, AlphaPolicy::kStrip));
  if (covers.empty()) {
    covers.push_back(SyntheticCover(cfg.height, cfg.width, 1));
    covers.push_back(SyntheticCover(cfg.height, cfg.width, 2));
  }
  return covers;
}

json LoadJson(const fs::path& path) {
  try {
    return json::parse(ReadTextFile(path));
  } catch (const json::exception& e) {
    throw PipelineError("io", path.string() + ": " + e.what());
  }
}

}  // namespace

void SavePlanes(std::span<const ImagePlane> planes, const fs::path& dir) {
  fs::create_directories(dir);
  json files = json::array();
  for (std::size_t i = 0; i < planes.size(); ++i) {
    SavePng(planes[i], dir / PlaneFileName(i));
    files.push_back(PlaneFileName(i));
  }
  const json manifest = {{"format", kPlanesFormat},
                         {"height", planes.empty() ? 0 : planes[0].height()},
                         {"width", planes.empty() ? 0 : planes[0].width()},
                         {"count", planes.size()},
                         {"files", files}};
  WriteTextFile(dir / "planes.json", manifest.dump(2) + "\n");
}

std::vector<ImagePlane> LoadPlanes(const fs::path& dir) {
  if (!fs::exists(dir / "planes.json")) {
    throw PipelineError("io", "missing plane set: " + (dir / "planes.json").string());
  }
  const json manifest = LoadJson(dir / "planes.json");
  if (manifest.value("format", std::string()) != kPlanesFormat) {
    throw PipelineError("io", dir.string() + " is not a plane set");
  }
  std::vector<ImagePlane> planes;
  for (const auto& f : manifest.at("files")) planes.push_back(LoadPng(dir / f.get<std::string>()));
  const auto h = manifest.at("height").get<std::size_t>();
  const auto w = manifest.at("width").get<std::size_t>();
  for (const auto& p : planes) {
    if (p.height() != h || p.width() != w) throw PipelineError("io", dir.string() + ": plane size mismatch");
  }
  return planes;
}

json OutputsToJson(const ScenarioBundle& bundle) {
  json scenarios = json::array();
  for (std::size_t j = 0; j < bundle.scenarios.size(); ++j) {
    const Scenario& s = bundle.scenarios[j];
    json lanes = json::array();
    for (const auto& y : s.outputs) lanes.push_back(BitsToJson(y));
    json entry = {{"id", s.id}, {"real", j == bundle.real_index}, {"lanes", lanes}};
    if (!s.outputs.empty() && s.outputs.front().size() <= 64) {
      entry["value"] = BitsToUint(s.outputs.front());
    }
    scenarios.push_back(std::move(entry));
  }
  return {{"scenarios", scenarios}};
}

PipelineArtifacts CmdPipeline(const PipelineConfig& cfg, const EvalOptions& eval) {
  PipelineArtifacts art;
  const fs::path out = cfg.output_dir;
  art.embedded_dir = out / "embedded";
  art.circuit_file = out / "circuit.json";
  art.computed_dir = out / "computed";
  art.outputs_file = out / "outputs.json";
  art.bundle_file = out / "bundle.json";

  art.bundle = Phase("bundle", [&] {
    std::vector<ScenarioSpec> specs;
    for (const auto& s : cfg.scenarios) specs.push_back({s.id, s.circuit, s.inputs, s.narrative});
    BundleOptions bo;
    bo.height = cfg.height;
    bo.width = cfg.width;
    bo.lanes_per_scenario = cfg.lanes_per_scenario;
    bo.pad_to = cfg.pad_to;
    bo.seed = cfg.lane_seed;
    return CreateBundle(std::move(specs), cfg.real_index, bo);
  });
  ScenarioBundle& bundle = art.bundle;
  if (cfg.obfuscate) {
    Phase("obfuscate", [&] {
      ObfuscateBundle(bundle, ObfuscationParams::All(cfg.obfuscation_seed, cfg.dummy_gates));
      return 0;
    });
  }

  auto planes = Phase("embed", [&] {
    const auto covers = LoadCovers(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto p = Embed(bundle, covers, cfg.noise_seed, {cfg.ancilla_fill, std::nullopt});
    art.embed_ms = MsSince(t0);
    fs::create_directories(out);
    SavePlanes(p, art.embedded_dir);
    SaveCircuit(bundle.evaluated, art.circuit_file);
    return p;
  });

  Phase("evaluate", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = Evaluate(bundle.evaluated, planes, eval);
    art.compute_ms = MsSince(t0);
    art.transcript = std::move(result.transcript);
    SavePlanes(planes, art.computed_dir);
    return 0;
  });

  Phase("extract", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    Extract(bundle, planes);
    art.extract_ms = MsSince(t0);
    WriteTextFile(art.outputs_file, OutputsToJson(bundle).dump(2) + "\n", true);
    SaveBundle(bundle, art.bundle_file);
    return 0;
  });
  return art;
}

EvalResult CmdCompute(const fs::path& circuit_file, const fs::path& in_dir, const fs::path& out_dir,
                      const EvalOptions& eval) {
  const Circuit circuit = Phase("compute", [&] { return LoadCircuit(circuit_file); });
  auto planes = Phase("compute", [&] { return LoadPlanes(in_dir); });
  return Phase("compute", [&] {
    auto result = Evaluate(circuit, planes, eval);
    SavePlanes(planes, out_dir);
    if (result.transcript) {
      const auto& tr = *result.transcript;
      const json doc = {{"gates", tr.gates},
                        {"images", tr.image_count()},
                        {"snapshots", tr.snapshot_count()},
                        {"megabytes", tr.megabytes()}};
      WriteTextFile(out_dir / "transcript.json", doc.dump(2) + "\n");
    }
    return result;
  });
}

json CmdExtract(const fs::path& bundle_file, const fs::path& computed_dir) {
  return Phase("extract", [&] {
    ScenarioBundle bundle = LoadBundle(bundle_file);
    const auto planes = LoadPlanes(computed_dir);
    Extract(bundle, planes);
    return OutputsToJson(bundle);
  });
}

CoerceResult CmdCoerce(const fs::path& bundle_file, std::size_t rounds, const fs::path& computed_dir,
                       const std::optional<fs::path>& embedded_dir, const fs::path& out_dir) {
  return Phase("coerce", [&] {
    ScenarioBundle bundle = LoadBundle(bundle_file);
    CoerceResult result;
    if (rounds == 0) {
      result.summary = "no rounds requested\n";
      return result;
    }
    const auto computed = LoadPlanes(computed_dir);
    std::vector<ImagePlane> embedded;
    if (embedded_dir) embedded = LoadPlanes(*embedded_dir);
    fs::create_directories(out_dir);
    std::ostringstream summary;

    auto write_claim = [&](const TerminalClaim& claim) {
      const json doc = {{"terminal_claim", claim.statement}, {"rounds", claim.rounds}};
      WriteTextFile(out_dir / "claim.json", doc.dump(2) + "\n");
      summary << "terminal claim after " << claim.rounds << " round(s): " << claim.statement << "\n";
      result.claim = claim;
    };

    for (std::size_t k = 1; k <= rounds; ++k) {
      auto next = RevealNext(bundle);
      if (const auto* claim = std::get_if<TerminalClaim>(&next)) {
        write_claim(*claim);
        break;
      }
      const auto& rev = std::get<Revelation>(next);
      RoundResult rr;
      rr.round = k;
      rr.scenario_id = rev.scenario_id;
      rr.file = out_dir / ("round_" + std::to_string(k) + ".json");
      const json doc = {{"round", k},
                        {"height", bundle.height},
                        {"width", bundle.width},
                        {"revelation", RevelationToJson(rev, bundle.width)}};
      WriteTextFile(rr.file, doc.dump(2) + "\n");
      rr.verification = VerifyRevelation(rev, computed, embedded);
      result.all_verified = result.all_verified && rr.verification.ok;
      summary << "round " << k << ": scenario '" << rev.scenario_id << "', circuit "
              << rev.circuit.gate_count() << " gates, " << rev.lanes.size() << " lane(s), output "
              << BitsToHex(rev.output) << " -> "
              << (rr.verification.ok ? "verified" : "REJECTED: " + rr.verification.reason) << "\n";
      result.rounds.push_back(std::move(rr));
    }
    const auto& st = bundle.coercion;
    const std::size_t budget = std::min(st.budget, bundle.revelation_order.size());
    if (!result.claim && st.rounds_elapsed >= budget) {
      write_claim(std::get<TerminalClaim>(RevealNext(bundle)));
    }
    result.summary = summary.str();
    return result;
  });
}

VerificationResult CmdVerify(const fs::path& revelation_file, const fs::path& computed_dir,
                             const std::optional<fs::path>& embedded_dir) {
  return Phase("verify", [&] {
    const json doc = LoadJson(revelation_file);
    const Revelation rev = RevelationFromJson(doc.at("revelation"), doc.at("height").get<std::size_t>(),
                                              doc.at("width").get<std::size_t>());
    const auto computed = LoadPlanes(computed_dir);
    std::vector<ImagePlane> embedded;
    if (embedded_dir) embedded = LoadPlanes(*embedded_dir);
    return VerifyRevelation(rev, computed, embedded);
  });
}

QualityReport MeasureQuality(const ImagePlane& cover, const ImagePlane& embedded) {
  QualityReport q;
  q.psnr = Psnr(cover, embedded);
  q.ssim = Ssim(cover, embedded);
  q.passed = q.psnr >= q.psnr_threshold && q.ssim > q.ssim_threshold;
  return q;
}

QualityReport CmdQuality(const fs::path& cover, const fs::path& embedded) {
  return Phase("quality", [&] {
    return MeasureQuality(LoadPng(cover, AlphaPolicy::kStrip), LoadPng(embedded, AlphaPolicy::kStrip));
  });
}

}  // namespace pdfhc
