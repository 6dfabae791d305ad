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

#include "pdfhc/security/bounds.h"

#include <cmath>
#include <numbers>
#include <string>

namespace pdfhc {

void SecurityParams::Validate() const {
  if (L < 1) throw std::invalid_argument("L must be positive");
  if (t >= L) throw std::invalid_argument("coercion rounds t must be below L");
  if (!(p_b > 0 && p_b < 1)) throw std::invalid_argument("p_b must lie strictly between 0 and 1");
  if (L * rho * 100 > n) {
    throw std::invalid_argument("L * rho = " + std::to_string(L * rho) + " exceeds n / 100");
  }
}

double EpsilonSingleLog(double n, double p_b) {
  if (!(n >= 2)) throw std::invalid_argument("epsilon needs n >= 2");
  if (!(p_b > 0 && p_b < 1)) throw std::invalid_argument("p_b must lie strictly between 0 and 1");
  return std::log10((1 - p_b * p_b) / p_b) - std::lgamma(n) / std::numbers::ln10;
}

double AdvPrivBoundLog(const SecurityParams& p) {
  if (p.L == 0 || p.ell == 0) throw std::invalid_argument("L and ell must be positive");
  return std::log10(double(p.L) * double(p.ell)) + EpsilonSingleLog(double(p.n), p.p_b);
}

double AdvExistBoundLog(const SecurityParams& p) {
  if (p.t >= p.L) throw std::invalid_argument("coercion rounds t must be below L");
  if (p.t * p.ell >= p.n) throw std::invalid_argument("t * ell must be below n");
  return std::log10(double(p.L - p.t) * double(p.ell)) +
         EpsilonSingleLog(double(p.n - p.t * p.ell), p.p_b);
}

double IntentBaseline(const SecurityParams& p) {
  if (p.t >= p.L) throw std::invalid_argument("coercion rounds t must be below L");
  return 1.0 / double(p.L - p.t);
}

Interval WilsonInterval(std::size_t successes, std::size_t trials, double z) {
  if (successes > trials) throw std::invalid_argument("more successes than trials");
  if (trials == 0) return {0, 1};
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  // The endpoints at 0 and n successes are exactly 0 and 1; rounding would
  // otherwise leave them a few ulps inside.
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

Interval NewcombeInterval(std::size_t s1, std::size_t n1, std::size_t s2, std::size_t n2,
                          double z) {
  const double p1 = n1 ? double(s1) / double(n1) : 0;
  const double p2 = n2 ? double(s2) / double(n2) : 0;
  const Interval a = WilsonInterval(s1, n1, z);
  const Interval b = WilsonInterval(s2, n2, z);
  const double d = p1 - p2;
  return {d - std::sqrt((p1 - a.lo) * (p1 - a.lo) + (b.hi - p2) * (b.hi - p2)),
          d + std::sqrt((a.hi - p1) * (a.hi - p1) + (p2 - b.lo) * (p2 - b.lo))};
}

}  // namespace pdfhc
