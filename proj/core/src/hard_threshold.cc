// Copyright 2026 The SPADE Declipper Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spade/hard_threshold.h"

#include <algorithm>
#include <numeric>

#include "spade/errors.h"

namespace spade {

namespace {

double SymmetryTolerance(std::span<const Complex> z) {
  double peak = 0.0;
  for (const Complex& c : z) peak = std::max(peak, std::abs(c));
  return 1e-10 * std::max(1.0, peak);
}

}  // namespace

Spectrum HardThresholder::operator()(std::span<const Complex> z,
                                     std::size_t k) {
  Spectrum out(z.begin(), z.end());
  Apply(out, k);
  return out;
}

void HardThresholder::Apply(std::span<Complex> z, std::size_t k,
                            bool check_symmetry) {
  const std::size_t p = z.size();
  if (check_symmetry && !IsConjugateSymmetric(z, SymmetryTolerance(z))) {
    throw InvariantError("HardThreshold: input is not conjugate-symmetric");
  }
  const std::size_t groups = p / 2 + 1;
  if (p == 0 || k >= groups) return;
  if (k == 0) {
    std::fill(z.begin(), z.end(), Complex(0.0, 0.0));
    return;
  }

  order_.resize(groups);
  magnitude_.resize(groups);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  for (std::size_t m = 0; m < groups; ++m) magnitude_[m] = SquaredMagnitude(z[m]);
  // Total order: larger magnitude first, lower bin first on ties.
  auto before = [this](std::size_t a, std::size_t b) {
    const double ma = magnitude_[a];
    const double mb = magnitude_[b];
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k),
                   order_.end(), before);

  for (std::size_t j = k; j < groups; ++j) {
    const std::size_t m = order_[j];
    z[m] = Complex(0.0, 0.0);
    z[(p - m) % p] = Complex(0.0, 0.0);
  }
}

}  // namespace spade
