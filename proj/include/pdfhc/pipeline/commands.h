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

#ifndef PDFHC_PIPELINE_COMMANDS_H_
#define PDFHC_PIPELINE_COMMANDS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfhc/client/scheme.h"
#include "pdfhc/evaluator/evaluator.h"
#include "pdfhc/pipeline/config.h"

namespace pdfhc {

// A revelation or quality check did not hold.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A plane set on disk: <dir>/planes.json plus one PNG per plane.
void SavePlanes(std::span<const ImagePlane> planes, const std::filesystem::path& dir);
std::vector<ImagePlane> LoadPlanes(const std::filesystem::path& dir);

struct PipelineArtifacts {
  std::filesystem::path embedded_dir;
  std::filesystem::path circuit_file;  // the circuit Carol evaluates
  std::filesystem::path computed_dir;
  std::filesystem::path outputs_file;
  std::filesystem::path bundle_file;
  ScenarioBundle bundle;               // with outputs extracted
  std::optional<Transcript> transcript;
  double embed_ms = 0;
  double compute_ms = 0;
  double extract_ms = 0;
};

// loc_gen -> bundle -> obfuscate -> embed -> evaluate -> extract, writing
// every artifact under config.output_dir.
PipelineArtifacts CmdPipeline(const PipelineConfig& config, const EvalOptions& eval = {});

// Carol: evaluates `circuit_file` over the planes in `in_dir`.
EvalResult CmdCompute(const std::filesystem::path& circuit_file, const std::filesystem::path& in_dir,
                      const std::filesystem::path& out_dir, const EvalOptions& eval = {});

// Alice: reads every scenario's outputs from the computed planes.
nlohmann::json CmdExtract(const std::filesystem::path& bundle_file,
                          const std::filesystem::path& computed_dir);

nlohmann::json OutputsToJson(const ScenarioBundle& bundle);

struct RoundResult {
  std::size_t round = 0;
  std::string scenario_id;
  std::filesystem::path file;
  VerificationResult verification;
};

struct CoerceResult {
  std::vector<RoundResult> rounds;
  std::optional<TerminalClaim> claim;
  bool all_verified = true;
  std::string summary;  // Eve's view, human readable
};

// Reveals up to `rounds` decoys into out_dir/round_<k>.json, verifies each
// against the computed planes (and the embedded planes when given), and adds
// the terminal claim once the decoy budget is spent. Does not modify the
// bundle file.
CoerceResult CmdCoerce(const std::filesystem::path& bundle_file, std::size_t rounds,
                       const std::filesystem::path& computed_dir,
                       const std::optional<std::filesystem::path>& embedded_dir,
                       const std::filesystem::path& out_dir);

// Eve: checks one revelation file.
VerificationResult CmdVerify(const std::filesystem::path& revelation_file,
                             const std::filesystem::path& computed_dir,
                             const std::optional<std::filesystem::path>& embedded_dir);

struct QualityReport {
  double psnr = 0;
  double ssim = 0;
  double psnr_threshold = 50.0;
  double ssim_threshold = 0.99;
  bool passed = false;
};

QualityReport MeasureQuality(const ImagePlane& cover, const ImagePlane& embedded);
QualityReport CmdQuality(const std::filesystem::path& cover, const std::filesystem::path& embedded);

}  // namespace pdfhc

#endif  // PDFHC_PIPELINE_COMMANDS_H_
