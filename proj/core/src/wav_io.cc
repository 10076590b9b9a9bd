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

#include "spade/wav_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spade/errors.h"

namespace spade {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void Seek(std::size_t pos) { pos_ = pos; }

  void Require(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw FormatError(std::string("truncated ") + what, pos_);
    }
  }
  std::string_view Tag() {
    Require(4, "chunk tag");
    std::string_view tag(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return tag;
  }
  std::uint16_t U16() {
    Require(2, "field");
    const std::uint16_t v = static_cast<std::uint16_t>(
        bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t U32() {
    Require(4, "field");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 4;
    return v;
  }
  const std::uint8_t* data() const { return bytes_.data() + pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void PutTag(std::vector<std::uint8_t>& out, std::string_view tag) {
  out.insert(out.end(), tag.begin(), tag.end());
}
void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct FmtChunk {
  WavEncoding encoding = WavEncoding::kFloat32;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
};

FmtChunk ParseFmt(ByteReader& rd, std::uint32_t size) {
  const std::size_t start = rd.pos();
  if (size < 16) throw FormatError("fmt chunk shorter than 16 bytes", start);
  rd.Require(size, "fmt chunk");
  std::uint16_t format = rd.U16();
  FmtChunk fmt;
  fmt.channels = rd.U16();
  fmt.sample_rate = rd.U32();
  rd.U32();  // byte rate
  fmt.block_align = rd.U16();
  const std::uint16_t bits = rd.U16();
  if (format == kFormatExtensible) {
    if (size < 40) {
      throw FormatError("extensible fmt chunk shorter than 40 bytes", start);
    }
    rd.U16();  // cbSize
    rd.U16();  // valid bits
    rd.U32();  // channel mask
    format = rd.U16();  // first two bytes of the sub-format GUID
  }
  if (fmt.channels == 0) throw FormatError("zero channels", start + 2);
  if (fmt.sample_rate == 0) throw FormatError("zero sample rate", start + 4);
  if (format == kFormatPcm && bits == 16) {
    fmt.encoding = WavEncoding::kPcm16;
  } else if (format == kFormatFloat && bits == 32) {
    fmt.encoding = WavEncoding::kFloat32;
  } else {
    throw FormatError("unsupported codec (format tag " + std::to_string(format) +
                          ", " + std::to_string(bits) + " bits)",
                      start);
  }
  const std::size_t bytes_per_sample = bits / 8;
  if (fmt.block_align != fmt.channels * bytes_per_sample) {
    throw FormatError("inconsistent block alignment", start + 12);
  }
  rd.Seek(start + size);
  return fmt;
}

}  // namespace

WavAudio ParseWav(std::span<const std::uint8_t> bytes) {
  ByteReader rd(bytes);
  if (rd.Tag() != "RIFF") throw FormatError("missing RIFF tag", 0);
  rd.U32();  // riff size; not trusted, chunks are bounded by the buffer
  if (rd.Tag() != "WAVE") throw FormatError("missing WAVE tag", 8);

  std::optional<FmtChunk> fmt;
  while (rd.remaining() >= 8) {
    const std::size_t chunk_pos = rd.pos();
    const std::string_view tag = rd.Tag();
    const std::uint32_t size = rd.U32();
    if (tag == "fmt ") {
      fmt = ParseFmt(rd, size);
    } else if (tag == "data") {
      if (!fmt) throw FormatError("data chunk before fmt chunk", chunk_pos);
      if (size > rd.remaining()) {
        throw FormatError("data chunk extends past end of file", chunk_pos + 4);
      }
      if (size % fmt->block_align != 0) {
        throw FormatError("data size is not a multiple of the frame size",
                          chunk_pos + 4);
      }
      const std::size_t frames = size / fmt->block_align;
      WavAudio audio;
      audio.sample_rate = fmt->sample_rate;
      audio.encoding = fmt->encoding;
      audio.channels.resize(fmt->channels);
      for (TimeSignal& ch : audio.channels) {
        ch.sample_rate = fmt->sample_rate;
        ch.samples.resize(frames);
      }
      const std::uint8_t* p = rd.data();
      for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t c = 0; c < fmt->channels; ++c) {
          double v;
          if (fmt->encoding == WavEncoding::kPcm16) {
            const auto s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
            v = static_cast<double>(s) / 32768.0;
            p += 2;
          } else {
            std::uint32_t raw = 0;
            for (int i = 3; i >= 0; --i) raw = (raw << 8) | p[i];
            const float fv = std::bit_cast<float>(raw);
            if (!std::isfinite(fv)) {
              throw FormatError("non-finite float sample",
                                static_cast<std::uint64_t>(p - bytes.data()));
            }
            v = fv;
            p += 4;
          }
          audio.channels[c].samples[f] = v;
        }
      }
      return audio;
    } else {
      if (size > rd.remaining()) {
        throw FormatError("chunk extends past end of file", chunk_pos + 4);
      }
      rd.Seek(rd.pos() + size);
    }
    if (size % 2 == 1 && rd.remaining() > 0) rd.Seek(rd.pos() + 1);
  }
  throw FormatError(fmt ? "missing data chunk" : "missing fmt chunk", rd.pos());
}

WavAudio ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return ParseWav(bytes);
}

std::vector<std::uint8_t> EncodeWav(std::span<const TimeSignal> channels,
                                    WavEncoding encoding) {
  if (channels.empty()) throw DimensionError("EncodeWav: no channels");
  const std::size_t frames = channels.front().size();
  for (const TimeSignal& ch : channels) {
    if (ch.size() != frames) {
      throw DimensionError("EncodeWav: channel lengths differ");
    }
  }
  const auto n_ch = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t bytes_per_sample = encoding == WavEncoding::kPcm16 ? 2 : 4;
  const auto block_align = static_cast<std::uint16_t>(n_ch * bytes_per_sample);
  const auto rate = static_cast<std::uint32_t>(std::lround(channels.front().sample_rate));
  const auto data_size = static_cast<std::uint32_t>(frames * block_align);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(out, n_ch);
  PutU32(out, rate);
  PutU32(out, rate * block_align);
  PutU16(out, block_align);
  PutU16(out, static_cast<std::uint16_t>(bytes_per_sample * 8));
  PutTag(out, "data");
  PutU32(out, data_size);
  for (std::size_t f = 0; f < frames; ++f) {
    for (const TimeSignal& ch : channels) {
      const double v = ch.samples[f];
      if (encoding == WavEncoding::kPcm16) {
        const double scaled = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
        PutU16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
      } else {
        PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      }
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path& path,
              std::span<const TimeSignal> channels, WavEncoding encoding) {
  const std::vector<std::uint8_t> bytes = EncodeWav(channels, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace spade
