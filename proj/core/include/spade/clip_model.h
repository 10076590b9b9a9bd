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

// Hard clipping, clip-mask detection and projection onto the feasible set
//
//   Gamma(y) = { x : x[R] = y[R], x[H] >= theta[H], x[L] <= -theta[L] }.

#ifndef SPADE_CLIP_MODEL_H_
#define SPADE_CLIP_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spade {

struct TimeSignal {
  std::vector<double> samples;
  double sample_rate = 16000.0;

  std::size_t size() const { return samples.size(); }
};

// Throws InvariantError if any sample is NaN or infinite.
void ValidateFinite(std::span<const double> x);

// Peak-normalized copy (max |x| == 1). An all-zero signal is returned as is.
TimeSignal PeakNormalize(const TimeSignal& x);

class ClipLevel {
 public:
  // Throws InvariantError unless theta_c > 0 and finite.
  explicit ClipLevel(double theta_c);
  double theta_c() const { return theta_c_; }

 private:
  double theta_c_;
};

enum class SampleClass : std::uint8_t { kReliable, kHigh, kLow };

// Partition of an index range into reliable (R), high-clipped (H) and
// low-clipped (L) samples. Stored as one label per sample, so the partition
// invariant holds by construction.
class ClipMask {
 public:
  ClipMask() = default;
  explicit ClipMask(std::vector<SampleClass> labels)
      : labels_(std::move(labels)) {}

  std::size_t size() const { return labels_.size(); }
  SampleClass operator[](std::size_t n) const { return labels_[n]; }
  std::span<const SampleClass> labels() const { return labels_; }

  std::vector<std::size_t> reliable() const;
  std::vector<std::size_t> high() const;
  std::vector<std::size_t> low() const;

  std::size_t clipped_count() const;
  bool has_clipped() const { return clipped_count() > 0; }

 private:
  std::vector<std::size_t> Indices(SampleClass c) const;

  std::vector<SampleClass> labels_;
};

// y[n] = x[n] if |x[n]| < theta_c, theta_c * sgn(x[n]) otherwise.
TimeSignal Clip(const TimeSignal& x, ClipLevel level);

// H = {y >= theta_c}, L = {y <= -theta_c}, R = rest. Throws
// InconsistentInputError if some |y[n]| > theta_c + 1e-12.
ClipMask DetectMask(std::span<const double> y, ClipLevel level);

// Euclidean projection of v onto Gamma(y_block) with per-sample thresholds.
// Throws DimensionError if the lengths disagree.
void ProjectGamma(std::span<const double> v, const ClipMask& mask,
                  std::span<const double> y_block,
                  std::span<const double> thresholds, std::span<double> out);
std::vector<double> ProjectGamma(std::span<const double> v,
                                 const ClipMask& mask,
                                 std::span<const double> y_block,
                                 std::span<const double> thresholds);

// Membership test: exact equality on R, `slack` tolerance on H and L.
bool IsFeasible(std::span<const double> x, const ClipMask& mask,
                std::span<const double> y_block,
                std::span<const double> thresholds, double slack = 1e-12);

}  // namespace spade

#endif  // SPADE_CLIP_MODEL_H_
