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


// pdfhc: command-line workbench. Exit codes: 0 ok, 1 usage, 2 contract
// violation, 3 verification failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdfhc/circuit/catalog.h"
#include "pdfhc/circuit/circuit_io.h"
#include "pdfhc/circuit/expr.h"
#include "pdfhc/client/bundle_io.h"
#include "pdfhc/pipeline/bench.h"
#include "pdfhc/pipeline/commands.h"
#include "pdfhc/pipeline/config.h"
#include "pdfhc/security/bounds.h"
#include "pdfhc/security/games.h"

namespace fs = std::filesystem;
using namespace pdfhc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;
constexpr int kExitVerification = 3;

struct Globals {
  std::string seed;
  std::string config;
  std::string out;
  unsigned threads = 1;
  bool transcript = false;
};

std::optional<Seed> MasterSeed(const Globals& g) {
  if (g.seed.empty()) return std::nullopt;
  return ParseSeed(g.seed);
}

Seed SeedOr(const Globals& g, std::uint64_t fallback) {
  const auto s = MasterSeed(g);
  return s ? *s : SeedFromU64(fallback);
}

EvalOptions EvalFrom(const Globals& g) {
  EvalOptions eo;
  eo.threads = g.threads;
  eo.transcript = g.transcript;
  return eo;
}

fs::path OutDir(const Globals& g, const fs::path& fallback) {
  return g.out.empty() ? fallback : fs::path(g.out);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- compile ----

struct CompileArgs {
  std::string expr;
  std::string vars;
  std::string catalog;
  std::size_t pad_to = 0;
  bool list = false;
};

int RunCompile(const Globals& g, const CompileArgs& a) {
  if (a.list) {
    for (const auto& e : StandardCircuits()) {
      std::cout << e.name << "\t" << e.circuit.gate_count() << " gates\t" << e.description << "\n";
    }
    return kExitOk;
  }
  Circuit c;
  if (!a.catalog.empty()) {
    auto found = CatalogCircuit(a.catalog);
    if (!found) throw std::invalid_argument("unknown catalog circuit '" + a.catalog + "'");
    c = std::move(*found);
  } else if (!a.expr.empty()) {
    const BooleanExpr e = ParseExpr(a.expr);
    std::vector<std::string> vars = SplitList(a.vars);
    if (vars.empty()) throw std::invalid_argument("--vars is required with --expr");
    c = Compile(e, vars, "expr");
  } else {
    throw std::invalid_argument("give --expr, --catalog or --list");
  }
  if (a.pad_to > 0) c = PadTo(c, a.pad_to);
  if (g.out.empty()) {
    std::cout << SerializeCircuit(c) << "\n";
  } else {
    SaveCircuit(c, g.out);
    std::cerr << "wrote " << g.out << " (" << c.wire_count() << " wires, " << c.gate_count()
              << " gates, depth " << c.Depth() << ")\n";
  }
  return kExitOk;
}

// ---- pipeline ----

int RunPipeline(const Globals& g) {
  if (g.config.empty()) {
    std::cerr << "pipeline needs --config\n";
    return kExitUsage;
  }
  PipelineConfig cfg = LoadPipelineConfig(g.config, MasterSeed(g));
  if (!g.out.empty()) cfg.output_dir = g.out;
  const auto art = CmdPipeline(cfg, EvalFrom(g));
  const auto& b = art.bundle;
  const double secret_fraction =
      double(b.scenarios.size() * b.lanes_per_scenario) / double(b.coordinate_count());
  std::cout << "planes: " << b.plane_count() << " of " << b.height << "x" << b.width
            << ", gates: " << b.evaluated.gate_count() << "\n"
            << "secret coordinate fraction (L*rho/n): " << secret_fraction << "\n"
            << "embed " << art.embed_ms << " ms, compute " << art.compute_ms << " ms, extract "
            << art.extract_ms << " ms\n";
  if (art.transcript) {
    std::cout << "transcript: " << art.transcript->image_count() << " images, "
              << art.transcript->megabytes() << " MB\n";
  }
  std::cout << "embedded: " << art.embedded_dir.string() << "\n"
            << "circuit:  " << art.circuit_file.string() << "\n"
            << "computed: " << art.computed_dir.string() << "\n"
            << "outputs:  " << art.outputs_file.string() << " (secret)\n"
            << "bundle:   " << art.bundle_file.string() << " (secret)\n";
  return kExitOk;
}

// ---- compute / extract ----

struct ComputeArgs {
  std::string circuit;
  std::string in;
};

int RunCompute(const Globals& g, const ComputeArgs& a) {
  const fs::path out = OutDir(g, "computed");
  const auto r = CmdCompute(a.circuit, a.in, out, EvalFrom(g));
  std::cout << "computed planes in " << out.string() << " (" << r.ops.gate_steps << " gate steps)\n";
  if (r.transcript) {
    std::cout << "transcript: " << r.transcript->image_count() << " images, "
              << r.transcript->megabytes() << " MB\n";
  }
  return kExitOk;
}

struct ExtractArgs {
  std::string bundle;
  std::string computed;
};

int RunExtract(const Globals& g, const ExtractArgs& a) {
  const auto doc = CmdExtract(a.bundle, a.computed);
  if (g.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    WriteTextFile(g.out, doc.dump(2) + "\n", /*secret=*/true);
  }
  return kExitOk;
}

// ---- coerce / verify ----

struct CoerceArgs {
  std::string bundle;
  std::size_t rounds = 1;
  std::string computed;
  std::string embedded;
};

int RunCoerce(const Globals& g, const CoerceArgs& a) {
  std::optional<fs::path> embedded;
  if (!a.embedded.empty()) embedded = a.embedded;
  const auto r = CmdCoerce(a.bundle, a.rounds, a.computed, embedded, OutDir(g, "coercion"));
  std::cout << r.summary;
  return r.all_verified ? kExitOk : kExitVerification;
}

struct VerifyArgs {
  std::string revelation;
  std::string computed;
  std::string embedded;
};

int RunVerify(const Globals&, const VerifyArgs& a) {
  std::optional<fs::path> embedded;
  if (!a.embedded.empty()) embedded = a.embedded;
  const auto v = CmdVerify(a.revelation, a.computed, embedded);
  std::cout << (v.ok ? "verified" : "FAILED: " + v.reason) << "\n";
  return v.ok ? kExitOk : kExitVerification;
}

// ---- game ----

struct GameArgs {
  std::string game = "privacy";
  std::string adversary = "random-guess";
  std::size_t trials = 1000;
  std::size_t rounds = 1;
  std::size_t scenarios = 4;
  std::size_t size = 64;
  std::string fill = "lanes";
  std::string format = "text";
  bool oracle_circuits = false;
};

void PrintReports(const std::vector<GameReport>& reports, const std::string& format) {
  if (format == "csv") {
    std::cout << ReportCsvHeader() << "\n";
    for (const auto& r : reports) std::cout << ReportCsvRow(r) << "\n";
  } else if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(ReportToJson(r));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << r.game << " / " << r.adversary << ": rate " << r.rate << " ["
                << r.rate_ci.lo << ", " << r.rate_ci.hi << "] over " << r.trials
                << " trials, baseline " << r.baseline << ", advantage " << r.advantage << " ["
                << r.advantage_ci.lo << ", " << r.advantage_ci.hi << "]";
      if (r.analytic_bound_log10) std::cout << ", analytic log10 bound " << *r.analytic_bound_log10;
      if (r.verifications) std::cout << ", " << r.verifications << " verifications";
      std::cout << " -> " << (r.passed ? "PASS" : "FAIL") << "\n";
      if (!r.notes.empty()) std::cout << "  " << r.notes << "\n";
    }
  }
}

int RunGame(const Globals& g, const GameArgs& a) {
  GameConfig cfg;
  cfg.height = cfg.width = a.size;
  cfg.scenarios = a.scenarios;
  cfg.rounds = a.rounds;
  cfg.trials = a.trials;
  cfg.threads = g.threads;
  cfg.seed = SeedOr(g, 1);
  cfg.ancilla_fill = a.fill == "all" ? AncillaFill::kAllCoordinates : AncillaFill::kLanes;
  std::vector<GameReport> reports;
  if (a.game == "privacy") {
    reports.push_back(RunPrivacyGame(cfg, *MakeAdversary(a.adversary)));
  } else if (a.game == "coercion") {
    const auto r = RunCoercionGame(cfg, *MakeAdversary(a.adversary), a.oracle_circuits);
    reports = {r.existence, r.intent};
  } else {
    const auto r = RunExchangeabilityTest(cfg);
    reports.push_back(r.report);
    if (a.format == "text") {
      std::cout << "AUC " << r.auc << ", sanity AUC " << r.sanity_auc << ", label-oblivious "
                << (r.label_oblivious ? "yes" : "NO") << "\n";
    }
  }
  PrintReports(reports, a.format);
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  std::string gates;
  std::string sizes;
  std::string scenarios;
  std::size_t reps = 10;
  std::string kernel = "bytewise";
  bool quick = false;
  bool no_png = false;
};

std::vector<std::size_t> ParseSizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : SplitList(text)) out.push_back(std::stoul(s));
  return out;
}

int RunBenchCmd(const Globals& g, const BenchArgs& a) {
  BenchMatrix mx;
  if (a.quick) {
    mx.sizes = {64, 128};
    mx.sweep_size = 128;
    mx.reps = 3;
  }
  if (!a.gates.empty()) mx.gate_counts = ParseSizes(a.gates);
  if (!a.sizes.empty()) mx.sizes = ParseSizes(a.sizes);
  if (!a.scenarios.empty()) mx.scenario_counts = ParseSizes(a.scenarios);
  if (!a.quick) mx.reps = a.reps;
  if (std::find(mx.sizes.begin(), mx.sizes.end(), mx.sweep_size) == mx.sizes.end()) {
    mx.sweep_size = mx.sizes.back();
  }
  mx.sweep_gates = mx.gate_counts.back();
  mx.threads = g.threads;
  mx.transcript = g.transcript;
  mx.kernel = a.kernel == "bitsliced" ? Kernel::kBitsliced : Kernel::kBytewise;
  mx.measure_png = !a.no_png;
  mx.seed = SeedOr(g, 7);
  const auto report = RunBench(mx, &std::cerr);

  const fs::path out = OutDir(g, "bench");
  fs::create_directories(out);
  std::ostringstream csv;
  csv << BenchCsvHeader() << "\n";
  for (const auto& r : report.records) csv << BenchCsvRow(r) << "\n";
  WriteTextFile(out / "bench.csv", csv.str());
  const auto summary = BenchReportToJson(report);
  WriteTextFile(out / "summary.json", summary.dump(2) + "\n");
  std::cout << csv.str() << summary.dump(2) << "\n";
  return kExitOk;
}

// ---- quality ----

struct QualityArgs {
  std::string cover;
  std::string embedded;
};

int RunQualityCmd(const Globals& g, const QualityArgs& a) {
  QualityReport q;
  if (a.embedded.empty()) {
    // Worst case: every LSB of the cover replaced by noise.
    const ImagePlane cover = LoadPng(a.cover);
    ImagePlane noisy = cover;
    NoiseSource noise(SeedOr(g, 1));
    FillNoise(noisy, noise);
    q = MeasureQuality(cover, noisy);
  } else {
    q = CmdQuality(a.cover, a.embedded);
  }
  std::cout << "psnr " << q.psnr << " dB (threshold " << q.psnr_threshold << ")\n"
            << "ssim " << q.ssim << " (threshold " << q.ssim_threshold << ")\n"
            << (q.passed ? "PASS" : "FAIL") << "\n";
  return q.passed ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdfhc: hidden computation in image bit planes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed (64 hex digits or an integer)");
  app.add_option("--config", g.config, "Pipeline config file");
  app.add_option("--out", g.out, "Output file or directory");
  app.add_option("--threads", g.threads, "Evaluator threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--transcript", g.transcript, "Record the per-gate transcript");

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile an expression or catalog circuit");
  compile->add_option("--expr", ca.expr, "Boolean expression over & | ! ( ) 0 1");
  compile->add_option("--vars", ca.vars, "Comma-separated input order");
  compile->add_option("--catalog", ca.catalog, "Catalog circuit name");
  compile->add_option("--pad-to", ca.pad_to, "Pad with dummy gates to this gate count");
  compile->add_flag("--list", ca.list, "List catalog circuits");

  auto* pipeline = app.add_subcommand("pipeline", "Run all client and server phases from a config");

  ComputeArgs cpa;
  auto* compute = app.add_subcommand("compute", "Evaluate a circuit over a plane set");
  compute->add_option("--circuit", cpa.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  compute->add_option("--in", cpa.in, "Embedded plane directory")->required()->check(CLI::ExistingDirectory);

  ExtractArgs ea;
  auto* extract = app.add_subcommand("extract", "Read scenario outputs from computed planes");
  extract->add_option("--bundle", ea.bundle, "Bundle file")->required()->check(CLI::ExistingFile);
  extract->add_option("--computed", ea.computed, "Computed plane directory")->required()->check(CLI::ExistingDirectory);

  CoerceArgs co;
  auto* coerce = app.add_subcommand("coerce", "Reveal decoys round by round");
  coerce->add_option("--bundle", co.bundle, "Bundle file")->required()->check(CLI::ExistingFile);
  coerce->add_option("--rounds", co.rounds, "Coercion rounds");
  coerce->add_option("--computed", co.computed, "Computed plane directory")->required()->check(CLI::ExistingDirectory);
  coerce->add_option("--embedded", co.embedded, "Embedded plane directory (also checks inputs)")
      ->check(CLI::ExistingDirectory);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check one revelation file");
  verify->add_option("--revelation", va.revelation, "Revelation file")->required()->check(CLI::ExistingFile);
  verify->add_option("--computed", va.computed, "Computed plane directory")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--embedded", va.embedded, "Embedded plane directory")->check(CLI::ExistingDirectory);

  GameArgs ga;
  auto* game = app.add_subcommand("game", "Run a security game");
  game->add_option("--game", ga.game)->check(CLI::IsMember({"privacy", "coercion", "exchangeability"}));
  game->add_option("--adversary", ga.adversary)->check(CLI::IsMember(AdversaryNames()));
  game->add_option("--trials", ga.trials);
  game->add_option("--rounds", ga.rounds, "Revealed decoys t (coercion)");
  game->add_option("--scenarios", ga.scenarios, "Scenario count L");
  game->add_option("--size", ga.size, "Square image side");
  game->add_option("--fill", ga.fill, "Ancilla constants at lanes only or everywhere")
      ->check(CLI::IsMember({"lanes", "all"}));
  game->add_option("--format", ga.format)->check(CLI::IsMember({"text", "csv", "json"}));
  game->add_flag("--oracle-circuits", ga.oracle_circuits, "Give the intent adversary the unpadded circuits");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Timing matrix, writes bench.csv and summary.json");
  bench->add_option("--gates", ba.gates, "Comma-separated gate counts");
  bench->add_option("--sizes", ba.sizes, "Comma-separated square image sides");
  bench->add_option("--scenarios", ba.scenarios, "Comma-separated L values");
  bench->add_option("--reps", ba.reps)->check(CLI::Range(1u, 100000u));
  bench->add_option("--kernel", ba.kernel)->check(CLI::IsMember({"bytewise", "bitsliced"}));
  bench->add_flag("--quick", ba.quick, "Small matrix for smoke runs");
  bench->add_flag("--no-png", ba.no_png, "Skip PNG size measurement");

  QualityArgs qa;
  auto* quality = app.add_subcommand("quality", "PSNR and SSIM of an embedded image against its cover");
  quality->add_option("cover", qa.cover)->required()->check(CLI::ExistingFile);
  quality->add_option("embedded", qa.embedded, "Omit to fill every LSB with noise")->check(CLI::ExistingFile);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed()) return RunCompile(g, ca);
    if (pipeline->parsed()) return RunPipeline(g);
    if (compute->parsed()) return RunCompute(g, cpa);
    if (extract->parsed()) return RunExtract(g, ea);
    if (coerce->parsed()) return RunCoerce(g, co);
    if (verify->parsed()) return RunVerify(g, va);
    if (game->parsed()) return RunGame(g, ga);
    if (bench->parsed()) return RunBenchCmd(g, ba);
    if (quality->parsed()) return RunQualityCmd(g, qa);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const CorrectnessViolation& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return kExitUsage;
}
