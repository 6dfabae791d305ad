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

#ifndef PDFHC_SECURITY_BOUNDS_H_
#define PDFHC_SECURITY_BOUNDS_H_

#include <cstddef>
#include <stdexcept>

namespace pdfhc {

struct SecurityParams {
  std::size_t n = 0;    // coordinate count
  std::size_t L = 2;    // scenarios
  std::size_t ell = 1;  // bits per scenario
  std::size_t rho = 1;  // lanes per scenario
  std::size_t t = 0;    // coercion rounds
  double p_b = 0.5;     // decoy bit bias
  double eps_side = 0;  // side-channel term; 0 under the constant-time model

  // Throws std::invalid_argument unless t < L, 0 < p_b < 1, L * rho <= n / 100.
  void Validate() const;
};

// log10((1 - p^2) / (p (n - 1)!)), via lgamma. Requires n >= 2, 0 < p < 1.
double EpsilonSingleLog(double n, double p_b);

// log10(L * ell) + EpsilonSingleLog(n, p_b).
double AdvPrivBoundLog(const SecurityParams& params);

// log10((L - t) * ell) + EpsilonSingleLog(n - t * ell, p_b).
double AdvExistBoundLog(const SecurityParams& params);

// 1 / (L - t).
double IntentBaseline(const SecurityParams& params);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

inline constexpr double kZ95 = 1.959964;

// Wilson score interval for a binomial proportion.
Interval WilsonInterval(std::size_t successes, std::size_t trials, double z = kZ95);

// Newcombe's hybrid score interval for p1 - p2.
Interval NewcombeInterval(std::size_t s1, std::size_t n1, std::size_t s2, std::size_t n2,
                          double z = kZ95);

}  // namespace pdfhc

#endif  // PDFHC_SECURITY_BOUNDS_H_
