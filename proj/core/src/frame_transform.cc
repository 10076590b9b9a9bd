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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "spade/errors.h"

namespace spade {

namespace {

// FFTW plans for one transform length. Planning is not thread-safe in FFTW,
// execution through the new-array interface is, so plans are created once
// under a lock and shared read-only afterwards.
struct PlanPair {
  fftw_plan forward = nullptr;   // r2c, P real -> P/2+1 complex
  fftw_plan backward = nullptr;  // c2r, P/2+1 complex -> P real
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [len, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& Get(std::size_t len) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(len);
    if (it != plans_.end()) return it->second;
    const int n = static_cast<int>(len);
    double* real = fftw_alloc_real(len);
    fftw_complex* cplx = fftw_alloc_complex(len / 2 + 1);
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
    plans.backward = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
    fftw_free(real);
    fftw_free(cplx);
    return plans_.emplace(len, plans).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& Plans() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void FrameSpec::ValidateTransform() const {
  if (win_len == 0) throw InvariantError("FrameSpec: win_len must be >= 1");
  if (redundancy == 0) {
    throw InvariantError("FrameSpec: redundancy must be >= 1");
  }
}

void FrameSpec::Validate() const {
  ValidateTransform();
  if (hop == 0 || hop > win_len || win_len % hop != 0) {
    throw InvariantError("FrameSpec: hop must divide win_len (win_len=" +
                         std::to_string(win_len) +
                         ", hop=" + std::to_string(hop) + ")");
  }
  const std::vector<double> w = MakeWindow(*this);
  std::vector<double> sum(hop, 0.0);
  for (std::size_t n = 0; n < win_len; ++n) sum[n % hop] += w[n];
  const auto [lo, hi] = std::minmax_element(sum.begin(), sum.end());
  if (*lo <= 1e-12 || (*hi - *lo) > 1e-9 * *hi) {
    throw InvariantError(
        "FrameSpec: window is not constant-overlap-add at hop " +
        std::to_string(hop));
  }
}

std::vector<double> MakeWindow(const FrameSpec& spec) {
  std::vector<double> w(spec.win_len, 1.0);
  if (spec.window == WindowKind::kHann) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(spec.win_len);
    for (std::size_t n = 0; n < spec.win_len; ++n) {
      w[n] = 0.5 - 0.5 * std::cos(step * static_cast<double>(n));
    }
  }
  return w;
}

bool IsConjugateSymmetric(std::span<const Complex> z, double tol) {
  const std::size_t p = z.size();
  for (std::size_t m = 0; m < p; ++m) {
    if (std::abs(z[m] - std::conj(z[(p - m) % p])) > tol) return false;
  }
  return true;
}

double Norm(std::span<const Complex> z) {
  double acc = 0.0;
  for (const Complex& c : z) acc += SquaredMagnitude(c);
  return std::sqrt(acc);
}

double Norm(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

double RealInner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("RealInner: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return acc;
}

struct TightFrame::Workspace {
  explicit Workspace(std::size_t p)
      : real(fftw_alloc_real(p)), half(fftw_alloc_complex(p / 2 + 1)) {}
  ~Workspace() {
    fftw_free(real);
    fftw_free(half);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  double* real;
  fftw_complex* half;
  PlanPair plans;
};

TightFrame::TightFrame(std::size_t win_len, std::size_t redundancy) {
  FrameSpec{.win_len = win_len, .redundancy = redundancy}.ValidateTransform();
  win_len_ = win_len;
  coeff_len_ = win_len * redundancy;
  scale_ = 1.0 / std::sqrt(static_cast<double>(coeff_len_));
  ws_ = std::make_unique<Workspace>(coeff_len_);
  ws_->plans = Plans().Get(coeff_len_);
}

TightFrame::~TightFrame() = default;
TightFrame::TightFrame(TightFrame&&) noexcept = default;
TightFrame& TightFrame::operator=(TightFrame&&) noexcept = default;

void TightFrame::Analysis(std::span<const double> x,
                          std::span<Complex> out) const {
  if (x.size() != win_len_ || out.size() != coeff_len_) {
    throw DimensionError("Analysis: expected block of " +
                         std::to_string(win_len_) + " samples and " +
                         std::to_string(coeff_len_) + " coefficients, got " +
                         std::to_string(x.size()) + " and " +
                         std::to_string(out.size()));
  }
  const std::size_t p = coeff_len_;
  std::copy(x.begin(), x.end(), ws_->real);
  std::fill(ws_->real + win_len_, ws_->real + p, 0.0);
  fftw_execute_dft_r2c(ws_->plans.forward, ws_->real, ws_->half);

  const std::size_t half_len = p / 2 + 1;
  for (std::size_t m = 0; m < half_len; ++m) {
    out[m] = Complex(ws_->half[m][0] * scale_, ws_->half[m][1] * scale_);
  }
  for (std::size_t m = half_len; m < p; ++m) out[m] = std::conj(out[p - m]);
}

void TightFrame::Synthesis(std::span<const Complex> z,
                           std::span<double> out) const {
  if (z.size() != coeff_len_ || out.size() != win_len_) {
    throw DimensionError("Synthesis: expected " + std::to_string(coeff_len_) +
                         " coefficients and block of " +
                         std::to_string(win_len_) + " samples, got " +
                         std::to_string(z.size()) + " and " +
                         std::to_string(out.size()));
  }
  // Re(IDFT(z)) == IDFT of the Hermitian part of z, which c2r evaluates
  // from its lower half.
  const std::size_t p = coeff_len_;
  const std::size_t half_len = p / 2 + 1;
  for (std::size_t m = 0; m < half_len; ++m) {
    const Complex h = 0.5 * (z[m] + std::conj(z[(p - m) % p]));
    ws_->half[m][0] = h.real();
    ws_->half[m][1] = h.imag();
  }
  fftw_execute_dft_c2r(ws_->plans.backward, ws_->half, ws_->real);
  for (std::size_t n = 0; n < win_len_; ++n) out[n] = ws_->real[n] * scale_;
}

Spectrum TightFrame::Analysis(std::span<const double> x) const {
  Spectrum out(coeff_len_);
  Analysis(x, out);
  return out;
}

std::vector<double> TightFrame::Synthesis(std::span<const Complex> z) const {
  std::vector<double> out(win_len_);
  Synthesis(z, out);
  return out;
}

Spectrum Analysis(std::span<const double> x, const FrameSpec& spec) {
  return TightFrame(spec).Analysis(x);
}

std::vector<double> Synthesis(std::span<const Complex> z,
                              const FrameSpec& spec) {
  return TightFrame(spec).Synthesis(z);
}

Segmentation Segment(std::span<const double> x, const FrameSpec& spec) {
  spec.Validate();
  if (x.empty()) throw InvariantError("Segment: empty signal");

  const std::size_t hop = spec.hop;
  const std::size_t n = spec.win_len;
  const std::size_t grid_len = (x.size() + hop - 1) / hop * hop;
  const std::size_t count = grid_len / hop + n / hop - 1;
  const auto pad = static_cast<std::ptrdiff_t>(spec.pad());
  const auto len = static_cast<std::ptrdiff_t>(x.size());
  const std::vector<double> w = MakeWindow(spec);

  Segmentation seg;
  seg.signal_len = x.size();
  seg.blocks.reserve(count);
  seg.starts.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(b * hop) - pad;
    std::vector<double> block(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::ptrdiff_t t = start + static_cast<std::ptrdiff_t>(i);
      if (t >= 0 && t < len) block[i] = w[i] * x[static_cast<std::size_t>(t)];
    }
    seg.blocks.push_back(std::move(block));
    seg.starts.push_back(start);
  }
  return seg;
}

OverlapAddResult OverlapAdd(std::span<const std::vector<double>> blocks,
                            std::span<const std::ptrdiff_t> starts,
                            const FrameSpec& spec, std::size_t out_len) {
  spec.Validate();
  if (blocks.size() != starts.size()) {
    throw DimensionError("OverlapAdd: blocks/starts size mismatch");
  }
  const std::size_t n = spec.win_len;
  const auto pad = static_cast<std::ptrdiff_t>(spec.pad());
  const auto hop = static_cast<std::ptrdiff_t>(spec.hop);
  const std::vector<double> w = MakeWindow(spec);

  // Accumulate on a buffer that spans every block, offset by `pad`.
  std::ptrdiff_t last_end = static_cast<std::ptrdiff_t>(out_len);
  for (std::ptrdiff_t s : starts) {
    if ((s + pad) % hop != 0 || s + pad < 0) {
      throw DimensionError("OverlapAdd: block start " + std::to_string(s) +
                           " is off the hop grid");
    }
    last_end = std::max(last_end, s + static_cast<std::ptrdiff_t>(n));
  }
  const std::size_t buf_len = static_cast<std::size_t>(last_end + pad);
  std::vector<double> acc(buf_len, 0.0);
  std::vector<double> wsum(buf_len, 0.0);

  // Ascending block order keeps the reduction deterministic.
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() != n) {
      throw DimensionError("OverlapAdd: block " + std::to_string(b) +
                           " has " + std::to_string(blocks[b].size()) +
                           " samples, expected " + std::to_string(n));
    }
    const auto offset = static_cast<std::size_t>(starts[b] + pad);
    for (std::size_t i = 0; i < n; ++i) {
      acc[offset + i] += blocks[b][i];
      wsum[offset + i] += w[i];
    }
  }

  OverlapAddResult result;
  result.samples.assign(out_len, 0.0);
  for (std::size_t t = 0; t < out_len; ++t) {
    const std::size_t j = t + static_cast<std::size_t>(pad);
    if (wsum[j] < 1e-12) {
      ++result.guarded_positions;
      continue;
    }
    result.samples[t] = acc[j] / wsum[j];
  }
  return result;
}

}  // namespace spade
