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

// Minimal RIFF/WAVE reader and writer: PCM16 and IEEE float32, including
// WAVE_FORMAT_EXTENSIBLE headers carrying either sub-format.

#ifndef SPADE_WAV_IO_H_
#define SPADE_WAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "spade/clip_model.h"

namespace spade {

enum class WavEncoding { kFloat32, kPcm16 };

struct WavAudio {
  double sample_rate = 0.0;
  WavEncoding encoding = WavEncoding::kFloat32;
  // De-interleaved channels, each carrying the file's sample rate.
  std::vector<TimeSignal> channels;
};

// PCM16 samples are scaled by 1/32768, so values lie in [-1, 1).
// Throws FormatError (with byte offset) on malformed or unsupported input,
// std::runtime_error if the file cannot be opened.
WavAudio ReadWav(const std::filesystem::path& path);
WavAudio ParseWav(std::span<const std::uint8_t> bytes);

// All channels must share one length. PCM16 output is rounded and saturated.
void WriteWav(const std::filesystem::path& path,
              std::span<const TimeSignal> channels,
              WavEncoding encoding = WavEncoding::kFloat32);
std::vector<std::uint8_t> EncodeWav(std::span<const TimeSignal> channels,
                                    WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace spade

#endif  // SPADE_WAV_IO_H_
