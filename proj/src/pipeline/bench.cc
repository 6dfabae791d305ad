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

#include "pdfhc/pipeline/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pdfhc/client/scheme.h"
#include "pdfhc/evaluator/evaluator.h"

namespace pdfhc {

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string Num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Cell {
  std::size_t gates;
  std::size_t side;
  std::size_t scenarios;
};

// Everything a cell needs between repetitions.
struct CellState {
  Cell cell;
  Circuit circuit;
  ScenarioBundle bundle;
  std::vector<ImagePlane> covers;
  Seed noise;
  EvalOptions eo;
  std::vector<double> embed, compute, extract, total;
  std::size_t transcript_images = 0;
};

CellState PrepareCell(const BenchMatrix& mx, const Cell& cell) {
  const Seed cell_seed = DeriveSeed(mx.seed, "bench-cell", cell.gates * 1000003 + cell.side);
  Circuit circuit = RegisterCircuit(cell.gates, mx.register_wires, cell_seed);
  SecureRng rng(DeriveSeed(cell_seed, "inputs", cell.scenarios));
  std::vector<ScenarioSpec> specs;
  for (std::size_t j = 0; j < cell.scenarios; ++j) {
    BitVector x(circuit.input_count());
    for (auto& b : x) b = std::uint8_t(rng() & 1);
    specs.push_back({"s" + std::to_string(j), circuit, std::move(x), {}});
  }
  BundleOptions bo;
  bo.height = cell.side;
  bo.width = cell.side;
  bo.seed = DeriveSeed(cell_seed, "bundle");
  ScenarioBundle bundle = CreateBundle(std::move(specs), 0, bo);
  EvalOptions eo;
  eo.threads = mx.threads;
  eo.transcript = mx.transcript;
  eo.kernel = mx.kernel;
  return CellState{cell,
                   std::move(circuit),
                   std::move(bundle),
                   {SyntheticCover(cell.side, cell.side, 1), SyntheticCover(cell.side, cell.side, 2)},
                   DeriveSeed(cell_seed, "noise"),
                   eo,
                   {}, {}, {}, {}, 0};
}

void RunRep(CellState& st, bool keep) {
  auto t0 = Clock::now();
  std::vector<ImagePlane> planes = Embed(st.bundle, st.covers, st.noise);
  const double te = MsSince(t0);
  t0 = Clock::now();
  const auto result = Evaluate(st.bundle.evaluated, planes, st.eo);
  const double tc = MsSince(t0);
  t0 = Clock::now();
  const auto outputs = ReadOutputs(st.bundle, planes);
  const double tx = MsSince(t0);
  if (result.transcript) st.transcript_images = result.transcript->image_count();
  if (outputs.size() != st.cell.scenarios) throw std::logic_error("bench extract lost scenarios");
  if (!keep) return;
  st.embed.push_back(te);
  st.compute.push_back(tc);
  st.extract.push_back(tx);
  st.total.push_back(te + tc + tx);
}

BenchRecord Finish(const BenchMatrix& mx, const CellState& st) {
  const Cell& cell = st.cell;
  BenchRecord rec;
  rec.circuit = st.circuit.name();
  rec.gates = cell.gates;
  rec.height = rec.width = cell.side;
  rec.scenarios = cell.scenarios;
  rec.reps = mx.reps;
  rec.embed = Summarize(st.embed);
  rec.compute = Summarize(st.compute);
  rec.extract = Summarize(st.extract);
  rec.total = Summarize(st.total);
  rec.planes_held = st.bundle.plane_count();
  rec.transcript_images = mx.transcript ? st.transcript_images : 2 * cell.gates;
  rec.transcript_mb = double(2 * cell.gates * cell.side * cell.side * ImagePlane::kChannels) / 1e6;
  rec.raw_bytes = rec.planes_held * cell.side * cell.side * ImagePlane::kChannels;

  const auto embedded = Embed(st.bundle, st.covers, st.noise);
  rec.psnr = Psnr(st.covers[0], embedded[0]);
  if (mx.measure_png) {
    std::size_t bytes = 0;
    for (const auto& p : embedded) bytes += EncodePng(p).size();
    rec.png_bytes = bytes;
  }
  rec.tfhe_reference_ms = double(cell.gates) * kTfheMsPerGate;
  return rec;
}

// Repetitions are interleaved across cells (rep r of every cell before rep
// r + 1 of any), so slow drift of the host clock spreads evenly over the grid.
std::vector<BenchRecord> RunCells(const BenchMatrix& mx, const std::vector<Cell>& cells,
                                  std::ostream* progress) {
  std::vector<CellState> states;
  states.reserve(cells.size());
  for (const auto& c : cells) states.push_back(PrepareCell(mx, c));
  for (std::size_t r = 0; r < mx.warmup + mx.reps; ++r) {
    for (auto& st : states) RunRep(st, r >= mx.warmup);
  }
  std::vector<BenchRecord> out;
  for (const auto& st : states) {
    out.push_back(Finish(mx, st));
    const auto& r = out.back();
    if (progress) {
      *progress << "m=" << r.gates << " " << r.height << "x" << r.width << " L=" << r.scenarios
                << ": compute " << Num(r.compute.median) << " ms (median), total "
                << Num(r.total.median) << " ms\n";
    }
  }
  return out;
}

}  // namespace

TimingStat Summarize(std::span<const double> samples) {
  TimingStat s;
  if (samples.empty()) return s;
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / double(samples.size());
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  s.median = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  if (samples.size() > 1) {
    double ss = 0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / double(samples.size() - 1));
  }
  return s;
}

LinearFit FitLine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("FitLine needs two or more points");
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("FitLine needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

double BenchReport::min_r2() const {
  double r = 1.0;
  for (const auto& [k, f] : fit_vs_gates) r = std::min(r, f.r2);
  for (const auto& [k, f] : fit_vs_pixels) r = std::min(r, f.r2);
  return r;
}

std::optional<double> BenchReport::speedup() const {
  if (!naive_ms || !vectorized_ms || *vectorized_ms <= 0) return std::nullopt;
  return *naive_ms / *vectorized_ms;
}

Circuit RegisterCircuit(std::size_t gates, std::size_t wires, const Seed& seed) {
  if (wires < 24) throw std::invalid_argument("register circuit needs at least 24 wires");
  Circuit c("register" + std::to_string(wires) + "-m" + std::to_string(gates));
  for (std::size_t i = 0; i < wires; ++i) {
    if (i < 16) {
      c.AddInput(c.AddWire(WireKind::kInput, "x" + std::to_string(i)));
    } else {
      c.AddWire(i % 2 ? WireKind::kAncillaOne : WireKind::kAncillaZero);
    }
  }
  SecureRng rng(DeriveSeed(seed, "register-gates"));
  for (std::size_t g = 0; g < gates; ++g) {
    const auto a = WireIndex(rng.Uniform(wires));
    WireIndex b, d;
    do b = WireIndex(rng.Uniform(wires)); while (b == a);
    do d = WireIndex(rng.Uniform(wires)); while (d == a || d == b);
    c.AddGate(a, b, d);
  }
  for (std::size_t i = wires - 8; i < wires; ++i) c.AddOutput(WireIndex(i), "y" + std::to_string(i));
  return c;
}

BenchReport RunBench(const BenchMatrix& mx, std::ostream* progress) {
  BenchReport report;
  const std::size_t base_l = mx.scenario_counts.empty() ? 2 : mx.scenario_counts.front();
  std::vector<Cell> cells;
  auto add = [&](const Cell& c) {
    for (const auto& x : cells) {
      if (x.gates == c.gates && x.side == c.side && x.scenarios == c.scenarios) return;
    }
    cells.push_back(c);
  };
  for (std::size_t side : mx.sizes) {
    for (std::size_t m : mx.gate_counts) add({m, side, base_l});
  }
  if (mx.scenario_counts.size() >= 2) {
    for (std::size_t l : mx.scenario_counts) add({mx.sweep_gates, mx.sweep_size, l});
  }
  report.records = RunCells(mx, cells, progress);
  auto find = [&](const Cell& c) -> const BenchRecord& {
    for (const auto& r : report.records) {
      if (r.gates == c.gates && r.height == c.side && r.scenarios == c.scenarios) return r;
    }
    throw std::logic_error("bench cell missing");
  };

  if (mx.gate_counts.size() >= 2) {
    for (std::size_t side : mx.sizes) {
      std::vector<double> x, y;
      for (std::size_t m : mx.gate_counts) {
        x.push_back(double(m));
        y.push_back(find({m, side, base_l}).compute.median);
      }
      report.fit_vs_gates.emplace_back(side, FitLine(x, y));
    }
  }
  if (mx.sizes.size() >= 2) {
    for (std::size_t m : mx.gate_counts) {
      std::vector<double> x, y;
      for (std::size_t side : mx.sizes) {
        x.push_back(double(side * side));
        y.push_back(find({m, side, base_l}).compute.median);
      }
      report.fit_vs_pixels.emplace_back(m, FitLine(x, y));
    }
  }
  if (mx.scenario_counts.size() >= 2) {
    double lo = 1e300, hi = 0;
    for (std::size_t l : mx.scenario_counts) {
      const double t = find({mx.sweep_gates, mx.sweep_size, l}).total.median;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    report.scenario_spread = (hi - lo) / lo;
  }
  if (mx.naive_check) {
    const Seed s = DeriveSeed(mx.seed, "naive-check");
    const Circuit c = RegisterCircuit(mx.sweep_gates, mx.register_wires, s);
    std::vector<ImagePlane> planes;
    NoiseSource noise(DeriveSeed(s, "noise"));
    for (std::size_t i = 0; i < c.wire_count(); ++i) {
      planes.emplace_back(mx.sweep_size, mx.sweep_size);
      FillNoise(planes.back(), noise);
    }
    EvalOptions eo;
    eo.threads = 1;
    eo.kernel = mx.kernel;
    std::vector<double> fast, slow;
    Evaluate(c, planes, eo);  // warm-up
    for (std::size_t r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) {
        const auto t0 = Clock::now();
        Evaluate(c, planes, eo);
        fast.push_back(MsSince(t0));
      }
      const auto t0 = Clock::now();
      EvaluateNaive(c, planes);
      slow.push_back(MsSince(t0));
    }
    report.vectorized_ms = Summarize(fast).median;
    report.naive_ms = Summarize(slow).median;
  }
  return report;
}

std::string BenchCsvHeader() {
  return "circuit,gates,height,width,pixels,scenarios,reps,embed_ms_mean,embed_ms_sd,"
         "compute_ms_mean,compute_ms_sd,compute_ms_median,extract_ms_mean,extract_ms_sd,total_ms_mean,total_ms_sd,"
         "planes_held,transcript_images,transcript_mb,raw_bytes,png_bytes,psnr_db,"
         "tfhe_reference_ms,tfhe_reference_over_compute";
}

std::string BenchCsvRow(const BenchRecord& r) {
  std::ostringstream os;
  os << r.circuit << ',' << r.gates << ',' << r.height << ',' << r.width << ','
     << r.height * r.width << ',' << r.scenarios << ',' << r.reps << ',' << Num(r.embed.mean) << ','
     << Num(r.embed.sd) << ',' << Num(r.compute.mean) << ',' << Num(r.compute.sd) << ',' << Num(r.compute.median) << ','
     << Num(r.extract.mean) << ',' << Num(r.extract.sd) << ',' << Num(r.total.mean) << ','
     << Num(r.total.sd) << ',' << r.planes_held << ',' << r.transcript_images << ','
     << Num(r.transcript_mb) << ',' << r.raw_bytes << ','
     << (r.png_bytes ? std::to_string(*r.png_bytes) : "") << ',' << Num(r.psnr) << ','
     << Num(r.tfhe_reference_ms) << ','
     << Num(r.compute.mean > 0 ? r.tfhe_reference_ms / r.compute.mean : 0);
  return os.str();
}

nlohmann::json BenchReportToJson(const BenchReport& report) {
  nlohmann::json fits_m = nlohmann::json::array(), fits_px = nlohmann::json::array();
  for (const auto& [side, f] : report.fit_vs_gates) {
    fits_m.push_back({{"side", side}, {"slope_ms_per_gate", f.slope}, {"intercept_ms", f.intercept}, {"r2", f.r2}});
  }
  for (const auto& [m, f] : report.fit_vs_pixels) {
    fits_px.push_back({{"gates", m}, {"slope_ms_per_pixel", f.slope}, {"intercept_ms", f.intercept}, {"r2", f.r2}});
  }
  nlohmann::json j = {{"fit_vs_gates", fits_m},
                      {"fit_vs_pixels", fits_px},
                      {"scenario_spread", report.scenario_spread},
                      {"min_r2", report.min_r2()},
                      {"tfhe_note", "reference column = gates x 13 ms, a published per-gate figure; not measured"}};
  if (report.speedup()) {
    j["naive_ms"] = *report.naive_ms;
    j["vectorized_ms"] = *report.vectorized_ms;
    j["speedup"] = *report.speedup();
  }
  return j;
}

}  // namespace pdfhc
