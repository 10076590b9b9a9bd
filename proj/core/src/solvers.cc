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

#include "spade/solvers.h"

#include <cmath>
#include <string>

#include "spade/errors.h"
#include "spade/hard_threshold.h"

namespace spade {

namespace {

// Forwards to a TightFrame and counts every transform into the currently
// selected bucket.
class CountingFrame {
 public:
  CountingFrame(const TightFrame& frame, TransformCounts* counts)
      : frame_(frame), counts_(counts) {}

  void set_counts(TransformCounts* counts) { counts_ = counts; }

  void Analysis(std::span<const double> x, std::span<Complex> out) {
    frame_.Analysis(x, out);
    ++counts_->analyses;
  }
  void Synthesis(std::span<const Complex> z, std::span<double> out) {
    frame_.Synthesis(z, out);
    ++counts_->syntheses;
  }

 private:
  const TightFrame& frame_;
  TransformCounts* counts_;
};

void CheckProblem(const BlockProblem& problem, const TightFrame& frame,
                  const SpadeConfig& cfg, Variant expected) {
  cfg.Validate();
  if (cfg.variant != expected) {
    throw InvariantError("solver called with config for variant " +
                         std::string(VariantName(cfg.variant)));
  }
  const std::size_t n = frame.block_len();
  if (problem.observed.size() != n || problem.mask.size() != n ||
      problem.thresholds.size() != n) {
    throw DimensionError("block problem does not match frame length " +
                         std::to_string(n));
  }
}

double DiffNorm(std::span<const Complex> a, std::span<const Complex> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += SquaredMagnitude(a[i] - b[i]);
  return std::sqrt(acc);
}

double DiffNorm(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kASpade:
      return "aspade";
    case Variant::kSSpadeOriginal:
      return "sspade-o";
    case Variant::kSSpadeProposed:
      return "sspade-dp";
  }
  return "unknown";
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kASpade, Variant::kSSpadeOriginal,
                    Variant::kSSpadeProposed}) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

void SpadeConfig::Validate() const {
  if (s < 1) throw InvariantError("SpadeConfig: s must be >= 1");
  if (r < 1) throw InvariantError("SpadeConfig: r must be >= 1");
  if (!(epsilon > 0.0)) {
    throw InvariantError("SpadeConfig: epsilon must be > 0");
  }
  if (max_iter && *max_iter < 1) {
    throw InvariantError("SpadeConfig: max_iter must be >= 1");
  }
}

std::size_t SpadeConfig::DefaultMaxIterations(std::size_t coeff_len) const {
  const std::size_t groups = coeff_len / 2 + 1;
  return r * ((groups + s - 1) / s) + 1;
}

std::size_t RelaxationSchedule(std::size_t i, std::size_t s, std::size_t r) {
  return s * (1 + i / r);
}

BlockResult SolveASpade(const BlockProblem& problem, const TightFrame& frame,
                        const SpadeConfig& cfg,
                        const IterationObserver& observer) {
  CheckProblem(problem, frame, cfg, Variant::kASpade);
  const std::size_t n = frame.block_len();
  const std::size_t p = frame.coeff_len();
  const std::size_t max_iter = cfg.MaxIterations(p);

  BlockResult result;
  CountingFrame op(frame, &result.setup_transforms);
  HardThresholder threshold;

  std::vector<double> x(problem.observed.begin(), problem.observed.end());
  std::vector<double> dw(n);
  Spectrum ax(p), u(p, Complex(0.0, 0.0)), zbar(p), w(p);

  op.Analysis(x, ax);
  op.set_counts(&result.loop_transforms);

  for (std::size_t i = 0; i < max_iter; ++i) {
    const std::size_t k = RelaxationSchedule(i, cfg.s, cfg.r);
    for (std::size_t m = 0; m < p; ++m) zbar[m] = ax[m] + u[m];
    threshold.Apply(zbar, k, /*check_symmetry=*/false);

    for (std::size_t m = 0; m < p; ++m) w[m] = zbar[m] - u[m];
    op.Synthesis(w, dw);
    ProjectGamma(dw, problem.mask, problem.observed, problem.thresholds, x);

    // A x^(i+1) serves the residual here and the thresholding step next.
    op.Analysis(x, ax);
    const double residual = DiffNorm(ax, zbar);

    result.iterations = i + 1;
    result.final_k = k;
    result.final_residual = residual;
    if (observer) {
      observer({.iteration = i, .k = k, .residual = residual, .zbar = zbar,
                .dual = u, .x = x});
    }
    if (cfg.use_epsilon && residual <= cfg.epsilon) {
      result.terminated_by = Termination::kEpsilon;
      break;
    }
    for (std::size_t m = 0; m < p; ++m) u[m] += ax[m] - zbar[m];
  }
  result.restored = std::move(x);
  return result;
}

BlockResult SolveSSpadeOriginal(const BlockProblem& problem,
                                const TightFrame& frame,
                                const SpadeConfig& cfg,
                                const IterationObserver& observer) {
  CheckProblem(problem, frame, cfg, Variant::kSSpadeOriginal);
  const std::size_t n = frame.block_len();
  const std::size_t p = frame.coeff_len();
  const std::size_t max_iter = cfg.MaxIterations(p);

  BlockResult result;
  CountingFrame op(frame, &result.setup_transforms);
  HardThresholder threshold;

  std::vector<double> dw(n), x(problem.observed.begin(), problem.observed.end());
  std::vector<double> correction(n);
  Spectrum zhat(p), u(p, Complex(0.0, 0.0)), zbar(p), w(p), dz(p);

  op.Analysis(problem.observed, zhat);
  op.set_counts(&result.loop_transforms);

  for (std::size_t i = 0; i < max_iter; ++i) {
    const std::size_t k = RelaxationSchedule(i, cfg.s, cfg.r);
    for (std::size_t m = 0; m < p; ++m) zbar[m] = zhat[m] + u[m];
    threshold.Apply(zbar, k, /*check_symmetry=*/false);

    // zhat = w + A (P_Gamma(D w) - D w), the least-norm correction that
    // moves D w onto Gamma.
    for (std::size_t m = 0; m < p; ++m) w[m] = zbar[m] - u[m];
    op.Synthesis(w, dw);
    ProjectGamma(dw, problem.mask, problem.observed, problem.thresholds, x);
    for (std::size_t t = 0; t < n; ++t) correction[t] = x[t] - dw[t];
    op.Analysis(correction, dz);
    for (std::size_t m = 0; m < p; ++m) zhat[m] = w[m] + dz[m];

    const double residual = DiffNorm(zhat, zbar);
    result.iterations = i + 1;
    result.final_k = k;
    result.final_residual = residual;
    if (observer) {
      observer({.iteration = i, .k = k, .residual = residual, .zbar = zbar,
                .zhat = zhat, .dual = u, .x = x});
    }
    if (cfg.use_epsilon && residual <= cfg.epsilon) {
      result.terminated_by = Termination::kEpsilon;
      break;
    }
    for (std::size_t m = 0; m < p; ++m) u[m] += zhat[m] - zbar[m];
  }
  // D zhat == P_Gamma(D w) since D A = Id; returning the projected block keeps
  // the reliable samples bit-exact.
  result.restored = std::move(x);
  return result;
}

BlockResult SolveSSpadeProposed(const BlockProblem& problem,
                                const TightFrame& frame,
                                const SpadeConfig& cfg,
                                const IterationObserver& observer) {
  CheckProblem(problem, frame, cfg, Variant::kSSpadeProposed);
  const std::size_t n = frame.block_len();
  const std::size_t p = frame.coeff_len();
  const std::size_t max_iter = cfg.MaxIterations(p);

  BlockResult result;
  CountingFrame op(frame, &result.loop_transforms);
  HardThresholder threshold;

  std::vector<double> x(problem.observed.begin(), problem.observed.end());
  std::vector<double> u(n, 0.0), diff(n), dz(n), shifted(n);
  Spectrum zbar(p);

  for (std::size_t i = 0; i < max_iter; ++i) {
    const std::size_t k = RelaxationSchedule(i, cfg.s, cfg.r);
    for (std::size_t t = 0; t < n; ++t) diff[t] = x[t] - u[t];
    op.Analysis(diff, zbar);
    threshold.Apply(zbar, k, /*check_symmetry=*/false);

    op.Synthesis(zbar, dz);
    for (std::size_t t = 0; t < n; ++t) shifted[t] = dz[t] + u[t];
    ProjectGamma(shifted, problem.mask, problem.observed, problem.thresholds, x);

    const double residual = DiffNorm(dz, x);
    result.iterations = i + 1;
    result.final_k = k;
    result.final_residual = residual;
    if (observer) {
      observer({.iteration = i, .k = k, .residual = residual, .zbar = zbar,
                .time_dual = u, .x = x});
    }
    if (cfg.use_epsilon && residual <= cfg.epsilon) {
      result.terminated_by = Termination::kEpsilon;
      break;
    }
    for (std::size_t t = 0; t < n; ++t) u[t] += dz[t] - x[t];
  }
  result.restored = std::move(x);
  return result;
}

BlockResult SolveBlock(const BlockProblem& problem, const TightFrame& frame,
                       const SpadeConfig& cfg,
                       const IterationObserver& observer) {
  switch (cfg.variant) {
    case Variant::kASpade:
      return SolveASpade(problem, frame, cfg, observer);
    case Variant::kSSpadeOriginal:
      return SolveSSpadeOriginal(problem, frame, cfg, observer);
    case Variant::kSSpadeProposed:
      return SolveSSpadeProposed(problem, frame, cfg, observer);
  }
  throw InvariantError("unknown SPADE variant");
}

Spectrum ProjectCoefficients(std::span<const Complex> w,
                             const BlockProblem& problem,
                             const TightFrame& frame) {
  const std::size_t n = frame.block_len();
  if (w.size() != frame.coeff_len() || problem.observed.size() != n) {
    throw DimensionError("ProjectCoefficients: operand lengths differ");
  }
  std::vector<double> dw = frame.Synthesis(w);
  std::vector<double> correction =
      ProjectGamma(dw, problem.mask, problem.observed, problem.thresholds);
  for (std::size_t t = 0; t < n; ++t) correction[t] -= dw[t];
  Spectrum out = frame.Analysis(correction);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] += w[m];
  return out;
}

}  // namespace spade
