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

#ifndef SPADE_METRICS_H_
#define SPADE_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace spade {

// 10 log10(||u||^2 / ||u - v||^2) in dB. Returns +infinity when u == v.
// Throws DimensionError on length mismatch, UndefinedInputError if ||u|| == 0.
double Sdr(std::span<const double> u, std::span<const double> v);

// Sdr restricted to the given sample indices.
double Sdr(std::span<const double> u, std::span<const double> v,
           std::span<const std::size_t> indices);

// Sdr(x, x_hat) - Sdr(x, y). +infinity when x_hat == x != y; NaN when y == x
// (nothing was clipped, so the improvement is undefined).
double DeltaSdr(std::span<const double> x, std::span<const double> y,
                std::span<const double> x_hat);

double DeltaSdr(std::span<const double> x, std::span<const double> y,
                std::span<const double> x_hat,
                std::span<const std::size_t> indices);

struct ScatterRow {
  std::size_t block_start = 0;
  double sdr_a_db = 0.0;
  double sdr_b_db = 0.0;
};

// Per-block SDR of two restorations on consecutive non-overlapping blocks.
// A trailing partial block is dropped. Blocks where x is all zeros report NaN.
std::vector<ScatterRow> BlockScatter(std::span<const double> x,
                                     std::span<const double> y,
                                     std::span<const double> x_hat_a,
                                     std::span<const double> x_hat_b,
                                     std::size_t block_len = 2048);

}  // namespace spade

#endif  // SPADE_METRICS_H_
