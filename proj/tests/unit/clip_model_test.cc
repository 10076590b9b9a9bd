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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "spade/errors.h"
#include "spade/frame_transform.h"

namespace spade {
namespace {

using Labels = std::vector<SampleClass>;
constexpr SampleClass R = SampleClass::kReliable;
constexpr SampleClass H = SampleClass::kHigh;
constexpr SampleClass L = SampleClass::kLow;

TimeSignal Signal(std::vector<double> v) { return {std::move(v), 16000.0}; }

TEST(ClipTest, AppliesHardClipping) {
  const TimeSignal y = Clip(Signal({0.2, -0.9, 0.6}), ClipLevel(0.5));
  EXPECT_EQ(y.samples, (std::vector<double>{0.2, -0.5, 0.5}));
  EXPECT_EQ(y.sample_rate, 16000.0);
}

TEST(ClipTest, HighThresholdIsIdentityAndClipIsIdempotent) {
  UniformSource rng(1);
  const TimeSignal x = Signal(testing::RandomVector(rng, 500));
  EXPECT_EQ(Clip(x, ClipLevel(1.0)).samples, x.samples);
  const TimeSignal once = Clip(x, ClipLevel(0.3));
  EXPECT_EQ(Clip(once, ClipLevel(0.3)).samples, once.samples);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LE(std::abs(once.samples[i]), 0.3);
    if (std::abs(x.samples[i]) < 0.3) {
      EXPECT_EQ(once.samples[i], x.samples[i]);
    }
  }
}

TEST(ClipLevelTest, RejectsNonPositive) {
  EXPECT_THROW(ClipLevel(0.0), InvariantError);
  EXPECT_THROW(ClipLevel(-0.1), InvariantError);
  EXPECT_THROW(ClipLevel(NAN), InvariantError);
}

TEST(DetectMaskTest, PartitionsSamples) {
  const ClipMask mask = DetectMask(std::vector<double>{0.2, -0.5, 0.5}, ClipLevel(0.5));
  EXPECT_EQ(mask.reliable(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(mask.low(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(mask.high(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(mask.clipped_count(), 2u);
}

TEST(DetectMaskTest, UnclippedSignalHasNoClippedSets) {
  const ClipMask mask =
      DetectMask(std::vector<double>{0.1, -0.99, 0.5}, ClipLevel(1.0));
  EXPECT_TRUE(mask.high().empty());
  EXPECT_TRUE(mask.low().empty());
  EXPECT_FALSE(mask.has_clipped());
}

TEST(DetectMaskTest, MatchesDirectThresholdingOfOriginal) {
  UniformSource rng(2);
  const TimeSignal x = Signal(testing::RandomVector(rng, 2000));
  const ClipLevel level(0.45);
  const ClipMask mask = DetectMask(Clip(x, level).samples, level);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x.samples[i];
    const SampleClass expected = v >= 0.45 ? H : (v <= -0.45 ? L : R);
    EXPECT_EQ(mask[i], expected) << i;
  }
  // Partition: every index lands in exactly one set.
  EXPECT_EQ(mask.reliable().size() + mask.high().size() + mask.low().size(),
            x.size());
}

TEST(DetectMaskTest, RejectsSamplesAboveThreshold) {
  try {
    DetectMask(std::vector<double>{0.1, 0.6, 0.2}, ClipLevel(0.5));
    FAIL() << "expected InconsistentInputError";
  } catch (const InconsistentInputError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  // Within the 1e-12 tolerance is accepted and counted as clipped.
  const ClipMask mask = DetectMask(std::vector<double>{0.5 + 1e-13}, ClipLevel(0.5));
  EXPECT_EQ(mask[0], H);
}

TEST(ProjectGammaTest, ElementwiseCases) {
  const ClipMask mask(Labels{R, H, L});
  const std::vector<double> y{0.3, 0.5, -0.5}, theta{0.5, 0.5, 0.5};
  const std::vector<double> v{0.1, 0.2, -0.8};
  EXPECT_EQ(ProjectGamma(v, mask, y, theta), (std::vector<double>{0.3, 0.5, -0.8}));
}

TEST(ProjectGammaTest, MembersAreFixedAndProjectionIsIdempotent) {
  const ClipMask mask(Labels{R, H, L, H});
  const std::vector<double> y{0.3, 0.5, -0.5, 0.5}, theta{0.5, 0.5, 0.5, 0.5};
  const std::vector<double> member{0.3, 0.9, -0.7, 0.5};
  EXPECT_EQ(ProjectGamma(member, mask, y, theta), member);
  const std::vector<double> v{-2.0, 0.1, 0.4, 3.0};
  const std::vector<double> once = ProjectGamma(v, mask, y, theta);
  EXPECT_EQ(ProjectGamma(once, mask, y, theta), once);
}

TEST(ProjectGammaTest, LengthMismatchThrows) {
  const ClipMask mask(Labels{R, H});
  EXPECT_THROW(ProjectGamma(std::vector<double>{1.0}, mask,
                            std::vector<double>{0, 0}, std::vector<double>{1, 1}),
               DimensionError);
}

TEST(ProjectGammaTest, OutputIsFeasibleAndNearest) {
  UniformSource rng(9);
  const std::size_t n = 40;
  for (int trial = 0; trial < 50; ++trial) {
    Labels labels(n);
    std::vector<double> y(n), theta(n);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = rng.Range(0.0, 1.0);
      const double u = rng();
      labels[i] = u < 0.6 ? R : (u < 0.8 ? H : L);
      y[i] = labels[i] == R ? rng.Range(-theta[i], theta[i])
                            : (labels[i] == H ? theta[i] : -theta[i]);
    }
    const ClipMask mask(labels);
    const std::vector<double> v = testing::RandomVector(rng, n, -2.0, 2.0);
    const std::vector<double> p = ProjectGamma(v, mask, y, theta);
    EXPECT_TRUE(testing::InGamma(p, mask, y, theta, 0.0));
    EXPECT_TRUE(IsFeasible(p, mask, y, theta, 0.0));

    double dist_p = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist_p += (v[i] - p[i]) * (v[i] - p[i]);
    for (int k = 0; k < 100; ++k) {
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] == R) g[i] = y[i];
        if (labels[i] == H) g[i] = theta[i] + rng.Range(0.0, 2.0);
        if (labels[i] == L) g[i] = -theta[i] - rng.Range(0.0, 2.0);
      }
      double dist_g = 0.0;
      for (std::size_t i = 0; i < n; ++i) dist_g += (v[i] - g[i]) * (v[i] - g[i]);
      EXPECT_LE(dist_p, dist_g + 1e-12);
    }
  }
}

TEST(ProjectGammaTest, WindowedOriginalIsFeasibleForWindowedThresholds) {
  UniformSource rng(4);
  const FrameSpec spec{.win_len = 64, .hop = 16};
  const std::vector<double> w = MakeWindow(spec);
  const std::vector<double> x = testing::RandomVector(rng, 64);
  const ClipLevel level(0.4);
  const TimeSignal y = Clip(Signal(x), level);
  const ClipMask mask = DetectMask(y.samples, level);
  std::vector<double> wx(64), wy(64), theta(64);
  for (std::size_t i = 0; i < 64; ++i) {
    wx[i] = w[i] * x[i];
    wy[i] = w[i] * y.samples[i];
    theta[i] = 0.4 * w[i];
  }
  EXPECT_TRUE(IsFeasible(wx, mask, wy, theta, 1e-15));
}

TEST(PeakNormalizeTest, ScalesToUnitPeak) {
  const TimeSignal x = PeakNormalize(Signal({0.1, -0.4, 0.2}));
  EXPECT_DOUBLE_EQ(x.samples[1], -1.0);
  EXPECT_DOUBLE_EQ(x.samples[0], 0.25);
  EXPECT_EQ(PeakNormalize(Signal({0.0, 0.0})).samples, (std::vector<double>{0, 0}));
}

TEST(ValidateFiniteTest, RejectsNanAndInf) {
  EXPECT_THROW(ValidateFinite(std::vector<double>{0.0, NAN}), InvariantError);
  EXPECT_THROW(ValidateFinite(std::vector<double>{INFINITY}), InvariantError);
  EXPECT_NO_THROW(ValidateFinite(std::vector<double>{0.0, 1.0}));
}

}  // namespace
}  // namespace spade
