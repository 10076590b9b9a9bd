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

#include "spade/test_signals.h"

#include <cmath>
#include <numbers>

namespace spade {

TimeSignal MakeMultiSine(const MultiSineOptions& opts) {
  UniformSource rng(opts.seed);
  const auto length =
      static_cast<std::size_t>(std::llround(opts.duration_s * opts.sample_rate));
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  TimeSignal out;
  out.sample_rate = opts.sample_rate;
  out.samples.assign(length, 0.0);
  for (std::size_t k = 0; k < opts.partials; ++k) {
    const double freq = rng.Range(opts.min_freq_hz, opts.max_freq_hz);
    const double amp = rng.Range(0.2, 1.0);
    const double phase = rng.Range(0.0, kTwoPi);
    const double mod_freq = rng.Range(0.2, 2.0);
    const double mod_phase = rng.Range(0.0, kTwoPi);
    const double w = kTwoPi * freq / opts.sample_rate;
    const double wm = kTwoPi * mod_freq / opts.sample_rate;
    for (std::size_t n = 0; n < length; ++n) {
      const double t = static_cast<double>(n);
      const double env =
          1.0 - opts.modulation_depth * 0.5 * (1.0 + std::sin(wm * t + mod_phase));
      out.samples[n] += amp * env * std::sin(w * t + phase);
    }
  }
  return PeakNormalize(out);
}

TimeSignal MakeTwoTone(double f1_hz, double f2_hz, double amp2,
                       std::size_t length, double sample_rate) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  TimeSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(length);
  for (std::size_t n = 0; n < length; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    out.samples[n] = std::sin(kTwoPi * f1_hz * t) +
                     amp2 * std::sin(kTwoPi * f2_hz * t + 0.7);
  }
  return PeakNormalize(out);
}

std::vector<CorpusItem> MakeSyntheticCorpus(std::size_t count,
                                            std::uint64_t seed) {
  UniformSource rng(seed);
  std::vector<CorpusItem> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    MultiSineOptions opts;
    opts.duration_s = 3.0 + 0.5 * static_cast<double>(rng.Index(5));
    opts.partials = 3 + rng.Index(6);
    opts.seed = seed * 1000003ULL + i;
    corpus.push_back({"synthetic_" + std::to_string(i), {MakeMultiSine(opts)}});
  }
  return corpus;
}

}  // namespace spade
