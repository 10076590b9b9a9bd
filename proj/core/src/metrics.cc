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

#include "spade/metrics.h"

#include <cmath>
#include <limits>

#include "spade/errors.h"

namespace spade {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double SdrFromEnergies(double signal, double error) {
  if (signal == 0.0) throw UndefinedInputError("SDR of a zero reference");
  if (error == 0.0) return kInf;
  return 10.0 * std::log10(signal / error);
}

void CheckLengths(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("SDR operands differ in length");
}

double Delta(double restored, double clipped) {
  if (std::isinf(clipped)) return std::numeric_limits<double>::quiet_NaN();
  return restored - clipped;
}

}  // namespace

double Sdr(std::span<const double> u, std::span<const double> v) {
  CheckLengths(u.size(), v.size());
  double signal = 0.0, error = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    signal += u[i] * u[i];
    error += d * d;
  }
  return SdrFromEnergies(signal, error);
}

double Sdr(std::span<const double> u, std::span<const double> v,
           std::span<const std::size_t> indices) {
  CheckLengths(u.size(), v.size());
  double signal = 0.0, error = 0.0;
  for (std::size_t i : indices) {
    if (i >= u.size()) throw DimensionError("SDR index out of range");
    const double d = u[i] - v[i];
    signal += u[i] * u[i];
    error += d * d;
  }
  return SdrFromEnergies(signal, error);
}

double DeltaSdr(std::span<const double> x, std::span<const double> y,
                std::span<const double> x_hat) {
  CheckLengths(x.size(), y.size());
  return Delta(Sdr(x, x_hat), Sdr(x, y));
}

double DeltaSdr(std::span<const double> x, std::span<const double> y,
                std::span<const double> x_hat,
                std::span<const std::size_t> indices) {
  CheckLengths(x.size(), y.size());
  return Delta(Sdr(x, x_hat, indices), Sdr(x, y, indices));
}

std::vector<ScatterRow> BlockScatter(std::span<const double> x,
                                     std::span<const double> y,
                                     std::span<const double> x_hat_a,
                                     std::span<const double> x_hat_b,
                                     std::size_t block_len) {
  if (y.size() != x.size() || x_hat_a.size() != x.size() ||
      x_hat_b.size() != x.size()) {
    throw DimensionError("BlockScatter: signals differ in length");
  }
  if (block_len == 0) throw DimensionError("BlockScatter: block_len is 0");

  std::vector<ScatterRow> rows;
  for (std::size_t start = 0; start + block_len <= x.size();
       start += block_len) {
    auto ref = x.subspan(start, block_len);
    ScatterRow row{.block_start = start};
    try {
      row.sdr_a_db = Sdr(ref, x_hat_a.subspan(start, block_len));
      row.sdr_b_db = Sdr(ref, x_hat_b.subspan(start, block_len));
    } catch (const UndefinedInputError&) {
      row.sdr_a_db = row.sdr_b_db = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spade
