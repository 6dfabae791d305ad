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

#include "pdfhc/circuit/catalog.h"

#include <array>

#include "pdfhc/circuit/builder.h"
#include "pdfhc/circuit/expr.h"

namespace pdfhc {
namespace {

std::vector<WireIndex> Inputs(CircuitBuilder& b, std::string_view prefix, unsigned width) {
  std::vector<WireIndex> wires;
  for (unsigned i = 0; i < width; ++i) wires.push_back(b.Input(std::string(prefix) + std::to_string(i)));
  return wires;
}

}  // namespace

Circuit ThresholdCircuit(unsigned width, unsigned constant) {
  CircuitBuilder b("threshold" + std::to_string(width) + "_gt" + std::to_string(constant));
  const auto x = Inputs(b, "x", width);
  std::vector<WireIndex> k;
  for (unsigned i = 0; i < width; ++i) k.push_back(b.Constant((constant >> i) & 1, "k" + std::to_string(i)));
  // x > k  <=>  !(k >= x)
  const WireIndex k_ge_x = b.GreaterEqualInto(k, x);
  b.Output(b.Not(k_ge_x), "gt");
  return std::move(b).Build();
}

Circuit Threshold3Circuit() {
  Circuit c = ThresholdCircuit(3, 3);
  c.set_name("threshold3");
  return c;
}

Circuit SmallExprCircuit() {
  const std::array<std::string, 3> vars = {"A", "B", "C"};
  return Compile(ParseExpr("(A & C) | (!A & B) | (!B & !C)"), vars, "small");
}

Circuit Adder4Circuit() {
  CircuitBuilder b("adder4");
  const auto a = Inputs(b, "a", 4);
  const auto c = Inputs(b, "b", 4);
  const auto sum = b.AddInto(a, c);
  for (std::size_t i = 0; i < sum.size(); ++i) b.Output(sum[i], "s" + std::to_string(i));
  return std::move(b).Build();
}

Circuit Multiplier8Circuit() {
  constexpr unsigned kWidth = 8;
  CircuitBuilder b("multiplier8");
  const auto a = Inputs(b, "a", kWidth);
  const auto c = Inputs(b, "b", kWidth);
  // rows[i][j] = a_j & b_i, weight i + j.
  std::vector<std::vector<WireIndex>> rows(kWidth);
  for (unsigned i = 0; i < kWidth; ++i) {
    for (unsigned j = 0; j < kWidth; ++j) rows[i].push_back(b.And(a[j], c[i]));
  }
  std::vector<WireIndex> product;
  product.push_back(rows[0][0]);
  // acc holds weights i .. i + 7 of the running sum.
  std::vector<WireIndex> acc(rows[0].begin() + 1, rows[0].end());
  acc.push_back(b.Constant(false));
  for (unsigned i = 1; i < kWidth; ++i) {
    const auto sum = b.AddInto(acc, rows[i]);
    product.push_back(sum[0]);
    acc.assign(sum.begin() + 1, sum.end());
  }
  product.insert(product.end(), acc.begin(), acc.end());  // weights 8 .. 15
  for (std::size_t i = 0; i < product.size(); ++i) b.Output(product[i], "p" + std::to_string(i));
  return std::move(b).Build();
}

Circuit Comparator8Circuit() {
  CircuitBuilder b("comparator8");
  const auto v = Inputs(b, "v", 8);
  const auto t = Inputs(b, "t", 8);
  const WireIndex t_ge_v = b.GreaterEqualInto(t, v);
  b.Output(b.Not(t_ge_v), "gt");
  return std::move(b).Build();
}

Circuit BrightnessCheckCircuit() {
  CircuitBuilder b("brightness_check");
  const auto level = Inputs(b, "level", 8);
  const auto threshold = Inputs(b, "threshold", 8);
  b.Output(b.GreaterEqualInto(level, threshold), "bright");
  return std::move(b).Build();
}

Circuit ColorBalanceCheckCircuit() {
  CircuitBuilder b("color_balance_check");
  const auto r = Inputs(b, "r", 8);
  const auto blue = Inputs(b, "b", 8);
  const auto rb = b.Subtract(r, blue);
  const auto br = b.Subtract(blue, r);
  std::vector<WireIndex> magnitude;
  for (unsigned i = 0; i < 8; ++i) magnitude.push_back(b.MuxInto(rb.no_borrow, br.bits[i], rb.bits[i]));
  WireIndex high = b.OrInto(magnitude[5], magnitude[4]);
  high = b.OrInto(magnitude[6], high);
  high = b.OrInto(magnitude[7], high);
  b.Output(b.Not(high), "balanced");
  return std::move(b).Build();
}

Circuit NoiseLevelCheckCircuit() {
  CircuitBuilder b("noise_level_check");
  const auto flags = Inputs(b, "f", 16);
  std::vector<std::vector<WireIndex>> counts;
  for (unsigned i = 0; i < 16; i += 2) {
    const auto sc = b.HalfAddInto(flags[i], flags[i + 1]);
    counts.push_back({sc.sum, sc.carry});
  }
  while (counts.size() > 1) {
    std::vector<std::vector<WireIndex>> next;
    for (std::size_t i = 0; i < counts.size(); i += 2) next.push_back(b.AddInto(counts[i], counts[i + 1]));
    counts = std::move(next);
  }
  const auto& n = counts.front();  // 5 bits, 0..16
  // n > 8  <=>  n4 | (n3 & (n2 | n1 | n0))
  WireIndex low = b.OrInto(n[1], n[0]);
  low = b.OrInto(n[2], low);
  const WireIndex mid = b.AndInto(n[3], low);
  b.Output(b.OrInto(n[4], mid), "noisy");
  return std::move(b).Build();
}

std::vector<CatalogEntry> StandardCircuits() {
  std::vector<CatalogEntry> out;
  out.push_back({"threshold3", "3-bit x > 3", false, Threshold3Circuit()});
  out.push_back({"small", "(A & C) | (!A & B) | (!B & !C)", false, SmallExprCircuit()});
  out.push_back({"adder4", "4-bit ripple-carry adder", false, Adder4Circuit()});
  out.push_back({"multiplier8", "8x8-bit shift-add multiplier", false, Multiplier8Circuit()});
  out.push_back({"comparator8", "8-bit v > t", false, Comparator8Circuit()});
  out.push_back({"brightness_check", "brightness level >= threshold", true, BrightnessCheckCircuit()});
  out.push_back({"color_balance_check", "|r - b| < 16", true, ColorBalanceCheckCircuit()});
  out.push_back({"noise_level_check", "more than 8 of 16 noise flags set", true, NoiseLevelCheckCircuit()});
  return out;
}

std::optional<Circuit> CatalogCircuit(std::string_view name) {
  for (auto& entry : StandardCircuits()) {
    if (entry.name == name) return std::move(entry.circuit);
  }
  return std::nullopt;
}

}  // namespace pdfhc
