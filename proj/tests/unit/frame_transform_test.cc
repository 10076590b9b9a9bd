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

#include "spade/frame_transform.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "spade/errors.h"

namespace spade {
namespace {

using testing::C;

TEST(AnalysisTest, ImpulseHasFlatSpectrum) {
  const Spectrum z = Analysis(std::vector<double>{1, 0, 0, 0},
                              FrameSpec{.win_len = 4, .redundancy = 2});
  ASSERT_EQ(z.size(), 8u);
  for (const Complex& c : z) EXPECT_NEAR(std::abs(c), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(AnalysisTest, ZeroBlockGivesZeroSpectrum) {
  const Spectrum z = Analysis(std::vector<double>(4, 0.0),
                              FrameSpec{.win_len = 4, .redundancy = 2});
  for (const Complex& c : z) EXPECT_EQ(c, Complex(0.0, 0.0));
}

TEST(AnalysisTest, ConstantBlockUnitary) {
  const std::vector<double> x{1, 1, 1, 1};
  const Spectrum z = Analysis(x, FrameSpec{.win_len = 4, .redundancy = 1});
  const std::vector<C> oracle = testing::DirectAnalysis(x, 4);
  const std::vector<C> expected{2.0, 0.0, 0.0, 0.0};
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_NEAR(std::abs(oracle[m] - expected[m]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(z[m] - expected[m]), 0.0, 1e-14);
  }
  EXPECT_NEAR(Norm(z), Norm(std::span<const double>(x)), 1e-14);
}

TEST(AnalysisTest, MatchesDirectDftOracle) {
  UniformSource rng(11);
  for (std::size_t n : {5u, 8u, 12u}) {
    for (std::size_t r : {1u, 2u, 3u}) {
      const std::vector<double> x = testing::RandomVector(rng, n);
      const Spectrum z = Analysis(x, FrameSpec{.win_len = n, .redundancy = r});
      const std::vector<C> oracle = testing::DirectAnalysis(x, n * r);
      for (std::size_t m = 0; m < n * r; ++m) {
        EXPECT_NEAR(std::abs(z[m] - oracle[m]), 0.0, 1e-12) << n << " " << r;
      }
    }
  }
}

TEST(AnalysisTest, LengthMismatchThrows) {
  EXPECT_THROW(Analysis(std::vector<double>(3), FrameSpec{.win_len = 4}),
               DimensionError);
  EXPECT_THROW(Synthesis(Spectrum(7), FrameSpec{.win_len = 4, .redundancy = 2}),
               DimensionError);
}

TEST(SynthesisTest, InvertsAnalysis) {
  UniformSource rng(3);
  const FrameSpec spec{.win_len = 64, .redundancy = 4};
  const std::vector<double> x = testing::RandomVector(rng, 64);
  const std::vector<double> back = Synthesis(Analysis(x, spec), spec);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-10);
}

TEST(SynthesisTest, ZeroSpectrumGivesZeroBlock) {
  const std::vector<double> x =
      Synthesis(Spectrum(8), FrameSpec{.win_len = 4, .redundancy = 2});
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(SynthesisTest, SingleConjugatePairIsSampledCosine) {
  Spectrum z(8);
  const Complex a(0.7, -0.4);
  z[1] = a;
  z[7] = std::conj(a);
  const std::vector<double> x = Synthesis(z, FrameSpec{.win_len = 4, .redundancy = 2});
  const std::vector<double> oracle =
      testing::DirectSynthesis(std::vector<C>(z.begin(), z.end()), 4);
  for (std::size_t t = 0; t < 4; ++t) {
    // 2 |a| cos(2 pi t / 8 + arg a) / sqrt(8)
    const double cosine = 2.0 * std::abs(a) *
                          std::cos(2.0 * std::numbers::pi * t / 8.0 + std::arg(a)) /
                          std::sqrt(8.0);
    EXPECT_NEAR(oracle[t], cosine, 1e-14);
    EXPECT_NEAR(x[t], oracle[t], 1e-14);
  }
}

class TightFrameProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(TightFrameProperties, ParsevalAdjointAndConjugateSymmetry) {
  const std::size_t r = GetParam();
  TightFrame frame(256, r);
  UniformSource rng(100 + r);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x = testing::RandomVector(rng, 256);
    const Spectrum ax = frame.Analysis(x);
    const double nx = Norm(std::span<const double>(x));
    EXPECT_LE(std::abs(Norm(ax) - nx), 1e-10 * nx);
    EXPECT_TRUE(IsConjugateSymmetric(ax, 1e-14));

    // <A x, z> == <x, D z> for an arbitrary (not symmetric) z.
    Spectrum z(frame.coeff_len());
    for (Complex& c : z) c = Complex(rng.Range(-1, 1), rng.Range(-1, 1));
    const std::vector<double> dz = frame.Synthesis(z);
    double rhs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rhs += x[i] * dz[i];
    EXPECT_NEAR(RealInner(ax, z), rhs, 1e-10 * std::max(1.0, std::abs(rhs)));

    const std::vector<double> back = frame.Synthesis(ax);
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(back[i], x[i], 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Redundancies, TightFrameProperties,
                         ::testing::Values(1u, 2u, 4u));

TEST(TightFrameTest, UnitaryCaseIsInvertibleBothWays) {
  TightFrame frame(32, 1);
  UniformSource rng(8);
  const std::vector<C> z = testing::RandomSymmetricSpectrum(rng, 32);
  const Spectrum back = frame.Analysis(frame.Synthesis(z));
  for (std::size_t m = 0; m < z.size(); ++m) {
    EXPECT_NEAR(std::abs(back[m] - z[m]), 0.0, 1e-10);
  }
}

TEST(FrameSpecTest, RejectsNonDividingHopAndNonColaWindows) {
  EXPECT_THROW((FrameSpec{.win_len = 1024, .hop = 300}.Validate()), InvariantError);
  EXPECT_THROW((FrameSpec{.win_len = 1024, .hop = 0}.Validate()), InvariantError);
  // Hann without overlap is not COLA (its sum vanishes at the block edges).
  EXPECT_THROW((FrameSpec{.win_len = 1024, .hop = 1024}.Validate()), InvariantError);
  EXPECT_THROW((FrameSpec{.redundancy = 0}.Validate()), InvariantError);
  EXPECT_NO_THROW((FrameSpec{}.Validate()));
  EXPECT_NO_THROW((FrameSpec{.win_len = 1024, .hop = 512}.Validate()));
  EXPECT_NO_THROW((FrameSpec{.win_len = 8, .hop = 8, .window = WindowKind::kRectangular}
                       .Validate()));
}

TEST(SegmentTest, BlockCountAndCoverage) {
  const FrameSpec spec;  // 1024 / 256, Hann
  const std::vector<double> x(1024, 1.0);
  const Segmentation seg = Segment(x, spec);
  // Counting oracle: 1 + ceil((1024 + 2 * pad - 1024) / 256) with pad = 768.
  const std::size_t pad = 768;
  const std::size_t expected = 1 + (1024 + 2 * pad - 1024 + 255) / 256;
  EXPECT_EQ(seg.blocks.size(), expected);
  EXPECT_EQ(seg.starts.front(), -768);
  EXPECT_EQ(seg.starts.back(), 1024 - 256);

  std::vector<int> coverage(x.size(), 0);
  for (std::ptrdiff_t s : seg.starts) {
    for (std::ptrdiff_t t = std::max<std::ptrdiff_t>(s, 0);
         t < std::min<std::ptrdiff_t>(s + 1024, 1024); ++t) {
      ++coverage[static_cast<std::size_t>(t)];
    }
  }
  for (int c : coverage) EXPECT_EQ(c, 4);
}

TEST(SegmentTest, ShortSignalIsZeroOutsideSupport) {
  const FrameSpec spec{.win_len = 16, .hop = 4};
  const std::vector<double> x{0.5, -0.25, 1.0};
  const Segmentation seg = Segment(x, spec);
  // One hop-grid cell of signal: 1 + 16/4 - 1 blocks.
  ASSERT_EQ(seg.blocks.size(), 4u);
  const std::vector<double> w = MakeWindow(spec);
  for (std::size_t b = 0; b < seg.blocks.size(); ++b) {
    for (std::size_t i = 0; i < 16; ++i) {
      const std::ptrdiff_t t = seg.starts[b] + static_cast<std::ptrdiff_t>(i);
      const double expected = (t >= 0 && t < 3) ? w[i] * x[static_cast<std::size_t>(t)] : 0.0;
      EXPECT_EQ(seg.blocks[b][i], expected);
    }
  }
}

TEST(SegmentTest, RectangularWindowGivesRawSlices) {
  const FrameSpec spec{.win_len = 8, .hop = 4, .window = WindowKind::kRectangular};
  UniformSource rng(5);
  const std::vector<double> x = testing::RandomVector(rng, 20);
  const Segmentation seg = Segment(x, spec);
  for (std::size_t b = 0; b < seg.blocks.size(); ++b) {
    for (std::size_t i = 0; i < 8; ++i) {
      const std::ptrdiff_t t = seg.starts[b] + static_cast<std::ptrdiff_t>(i);
      if (t >= 0 && t < 20) {
        EXPECT_EQ(seg.blocks[b][i], x[static_cast<std::size_t>(t)]);
      }
    }
  }
}

TEST(OverlapAddTest, RoundTripArbitraryLengths) {
  const FrameSpec spec{.win_len = 64, .hop = 16};
  UniformSource rng(17);
  for (std::size_t len = 1; len <= 300; ++len) {
    const std::vector<double> x = testing::RandomVector(rng, len);
    const Segmentation seg = Segment(x, spec);
    const OverlapAddResult y = OverlapAdd(seg.blocks, seg.starts, spec, len);
    ASSERT_EQ(y.samples.size(), len);
    EXPECT_EQ(y.guarded_positions, 0u);
    for (std::size_t i = 0; i < len; ++i) ASSERT_NEAR(y.samples[i], x[i], 1e-10);
  }
}

TEST(OverlapAddTest, SingleRectangularBlockIsIdentityOnSupport) {
  const FrameSpec spec{.win_len = 8, .hop = 8, .window = WindowKind::kRectangular};
  const std::vector<std::vector<double>> blocks{{1, 2, 3, 4, 5, 6, 7, 8}};
  const std::vector<std::ptrdiff_t> starts{0};
  const OverlapAddResult y = OverlapAdd(blocks, starts, spec, 8);
  EXPECT_EQ(y.samples, blocks[0]);
  // Outside the block's support there is no window mass.
  const OverlapAddResult longer = OverlapAdd(blocks, starts, spec, 10);
  EXPECT_EQ(longer.guarded_positions, 2u);
  EXPECT_EQ(longer.samples[9], 0.0);
}

TEST(OverlapAddTest, TwoHalfOverlappingHannBlocksOfConstant) {
  const FrameSpec spec{.win_len = 8, .hop = 4};
  const std::vector<double> w = MakeWindow(spec);
  // Window-sum oracle: periodic Hann at 50% overlap sums to exactly 1.
  for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(w[n] + w[n + 4], 1.0, 1e-15);

  const double c = 0.75;
  std::vector<std::vector<double>> blocks(2, std::vector<double>(8));
  for (std::size_t i = 0; i < 8; ++i) blocks[0][i] = blocks[1][i] = c * w[i];
  const std::vector<std::ptrdiff_t> starts{-4, 0};
  const OverlapAddResult y = OverlapAdd(blocks, starts, spec, 4);
  for (double v : y.samples) EXPECT_NEAR(v, c, 1e-15);
}

TEST(OverlapAddTest, RejectsOffGridStartsAndBadBlocks) {
  const FrameSpec spec{.win_len = 8, .hop = 4};
  const std::vector<std::vector<double>> blocks{std::vector<double>(8)};
  EXPECT_THROW(OverlapAdd(blocks, std::vector<std::ptrdiff_t>{-3}, spec, 4),
               DimensionError);
  const std::vector<std::vector<double>> short_block{std::vector<double>(7)};
  EXPECT_THROW(OverlapAdd(short_block, std::vector<std::ptrdiff_t>{0}, spec, 4),
               DimensionError);
}

}  // namespace
}  // namespace spade
