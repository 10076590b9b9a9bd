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

// Block framing and the oversampled-DFT Parseval tight frame.
//
// The analysis operator A maps a length-N real block to P = R * N complex
// coefficients: the block is zero-padded to P samples and transformed with
// the unitary DFT of length P. The synthesis operator D = A* takes the real
// part of the unitary inverse DFT and keeps the first N samples. With this
// pair A*A = DD* = Id holds exactly (up to rounding), for every R >= 1.

#ifndef SPADE_FRAME_TRANSFORM_H_
#define SPADE_FRAME_TRANSFORM_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace spade {

using Complex = std::complex<double>;

enum class WindowKind { kHann, kRectangular };

struct FrameSpec {
  std::size_t win_len = 1024;
  std::size_t hop = 256;
  std::size_t redundancy = 1;
  WindowKind window = WindowKind::kHann;

  // P, the number of coefficients per block.
  std::size_t transform_len() const { return redundancy * win_len; }

  // Edge padding applied on both sides of a signal before segmentation.
  std::size_t pad() const { return win_len - hop; }

  // Throws InvariantError unless win_len >= 1 and redundancy >= 1.
  void ValidateTransform() const;

  // ValidateTransform() plus: hop divides win_len and the window is COLA at
  // this hop (sum of shifted windows is a nonzero constant).
  void Validate() const;
};

// Periodic ("DFT-even") Hann or all-ones window of length spec.win_len.
std::vector<double> MakeWindow(const FrameSpec& spec);

// Complex coefficient vector of length P. Spectra produced by Analysis() are
// conjugate-symmetric: coeffs[m] == conj(coeffs[(P - m) % P]).
using Spectrum = std::vector<Complex>;

// |c|^2 without the overflow-safe hypot path std::norm takes in libstdc++.
inline double SquaredMagnitude(const Complex& c) {
  return c.real() * c.real() + c.imag() * c.imag();
}

// True when z[m] and conj(z[(P-m) % P]) agree to `tol` (absolute) for all m.
bool IsConjugateSymmetric(std::span<const Complex> z, double tol = 1e-12);

double Norm(std::span<const Complex> z);
double Norm(std::span<const double> x);

// Real inner product Re<a, b> on C^P.
double RealInner(std::span<const Complex> a, std::span<const Complex> b);

class TightFrame {
 public:
  // Throws InvariantError for win_len == 0 or redundancy == 0.
  TightFrame(std::size_t win_len, std::size_t redundancy);
  explicit TightFrame(const FrameSpec& spec)
      : TightFrame(spec.win_len, spec.redundancy) {}
  ~TightFrame();

  TightFrame(TightFrame&&) noexcept;
  TightFrame& operator=(TightFrame&&) noexcept;
  TightFrame(const TightFrame&) = delete;
  TightFrame& operator=(const TightFrame&) = delete;

  std::size_t block_len() const { return win_len_; }
  std::size_t coeff_len() const { return coeff_len_; }
  // Number of conjugate-pair groups, floor(P/2) + 1.
  std::size_t group_count() const { return coeff_len_ / 2 + 1; }

  // out = A x. Throws DimensionError on size mismatch.
  void Analysis(std::span<const double> x, std::span<Complex> out) const;
  // out = D z = A* z (real part of the adjoint). Throws DimensionError.
  void Synthesis(std::span<const Complex> z, std::span<double> out) const;

  Spectrum Analysis(std::span<const double> x) const;
  std::vector<double> Synthesis(std::span<const Complex> z) const;

 private:
  struct Workspace;

  std::size_t win_len_ = 0;
  std::size_t coeff_len_ = 0;
  double scale_ = 1.0;
  // Scratch buffers; a TightFrame is therefore not safe for concurrent use.
  // Create one per thread (plans are shared and immutable).
  std::unique_ptr<Workspace> ws_;
};

// Convenience wrappers that construct a frame for `spec` on every call.
Spectrum Analysis(std::span<const double> x, const FrameSpec& spec);
std::vector<double> Synthesis(std::span<const Complex> z, const FrameSpec& spec);

struct Segmentation {
  std::vector<std::vector<double>> blocks;  // windowed, win_len samples each
  std::vector<std::ptrdiff_t> starts;       // first sample index, may be < 0
  std::size_t signal_len = 0;
};

// Cuts x into overlapping windowed blocks. The signal is zero-padded by
// spec.pad() on the left and up to the hop grid plus spec.pad() on the right,
// so every true sample is covered by win_len / hop windows. Block b starts at
// b * hop - pad. Throws InvariantError for an invalid spec or empty signal.
Segmentation Segment(std::span<const double> x, const FrameSpec& spec);

struct OverlapAddResult {
  std::vector<double> samples;
  // Positions whose accumulated window sum was below 1e-12 and were zeroed.
  std::size_t guarded_positions = 0;
};

// Accumulates blocks at their starts and divides by the accumulated window
// sum, then trims to [0, out_len). Throws DimensionError if a block has the
// wrong length or a start is off the hop grid.
OverlapAddResult OverlapAdd(std::span<const std::vector<double>> blocks,
                            std::span<const std::ptrdiff_t> starts,
                            const FrameSpec& spec, std::size_t out_len);

}  // namespace spade

#endif  // SPADE_FRAME_TRANSFORM_H_
