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

#include "spade/clip_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spade/errors.h"

namespace spade {

void ValidateFinite(std::span<const double> x) {
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!std::isfinite(x[n])) {
      throw InvariantError("non-finite sample at index " + std::to_string(n));
    }
  }
}

TimeSignal PeakNormalize(const TimeSignal& x) {
  double peak = 0.0;
  for (double v : x.samples) peak = std::max(peak, std::abs(v));
  TimeSignal out = x;
  if (peak > 0.0) {
    for (double& v : out.samples) v /= peak;
  }
  return out;
}

ClipLevel::ClipLevel(double theta_c) : theta_c_(theta_c) {
  if (!(theta_c > 0.0) || !std::isfinite(theta_c)) {
    throw InvariantError("clipping threshold must be positive and finite");
  }
}

std::vector<std::size_t> ClipMask::Indices(SampleClass c) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    if (labels_[n] == c) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> ClipMask::reliable() const {
  return Indices(SampleClass::kReliable);
}
std::vector<std::size_t> ClipMask::high() const {
  return Indices(SampleClass::kHigh);
}
std::vector<std::size_t> ClipMask::low() const {
  return Indices(SampleClass::kLow);
}

std::size_t ClipMask::clipped_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(),
                    [](SampleClass c) { return c != SampleClass::kReliable; }));
}

TimeSignal Clip(const TimeSignal& x, ClipLevel level) {
  const double theta = level.theta_c();
  TimeSignal y = x;
  for (double& v : y.samples) {
    if (std::abs(v) >= theta) v = std::copysign(theta, v);
  }
  return y;
}

ClipMask DetectMask(std::span<const double> y, ClipLevel level) {
  const double theta = level.theta_c();
  std::vector<SampleClass> labels(y.size(), SampleClass::kReliable);
  for (std::size_t n = 0; n < y.size(); ++n) {
    if (std::abs(y[n]) > theta + 1e-12 || std::isnan(y[n])) {
      throw InconsistentInputError(
          "sample " + std::to_string(n) + " exceeds the clipping threshold " +
              std::to_string(theta),
          n);
    }
    if (y[n] >= theta) {
      labels[n] = SampleClass::kHigh;
    } else if (y[n] <= -theta) {
      labels[n] = SampleClass::kLow;
    }
  }
  return ClipMask(std::move(labels));
}

void ProjectGamma(std::span<const double> v, const ClipMask& mask,
                  std::span<const double> y_block,
                  std::span<const double> thresholds, std::span<double> out) {
  const std::size_t n = v.size();
  if (mask.size() != n || y_block.size() != n || thresholds.size() != n ||
      out.size() != n) {
    throw DimensionError("ProjectGamma: operand lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    switch (mask[i]) {
      case SampleClass::kReliable:
        out[i] = y_block[i];
        break;
      case SampleClass::kHigh:
        out[i] = std::max(v[i], thresholds[i]);
        break;
      case SampleClass::kLow:
        out[i] = std::min(v[i], -thresholds[i]);
        break;
    }
  }
}

std::vector<double> ProjectGamma(std::span<const double> v,
                                 const ClipMask& mask,
                                 std::span<const double> y_block,
                                 std::span<const double> thresholds) {
  std::vector<double> out(v.size());
  ProjectGamma(v, mask, y_block, thresholds, out);
  return out;
}

bool IsFeasible(std::span<const double> x, const ClipMask& mask,
                std::span<const double> y_block,
                std::span<const double> thresholds, double slack) {
  const std::size_t n = x.size();
  if (mask.size() != n || y_block.size() != n || thresholds.size() != n) {
    throw DimensionError("IsFeasible: operand lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    switch (mask[i]) {
      case SampleClass::kReliable:
        if (x[i] != y_block[i]) return false;
        break;
      case SampleClass::kHigh:
        if (x[i] < thresholds[i] - slack) return false;
        break;
      case SampleClass::kLow:
        if (x[i] > -thresholds[i] + slack) return false;
        break;
    }
  }
  return true;
}

}  // namespace spade
