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

// Per-block SPADE declipping solvers.
//
// All three variants are ADMM iterations with hard thresholding and a
// sparsity relaxation schedule k = s * (1 + floor(i / r)):
//
//   kASpade          analysis model; z = H_k(A x + u), x = P_Gamma(D (z - u)),
//                    stop on ||A x - z|| <= eps.
//   kSSpadeOriginal  both steps over coefficients; z = H_k(zh + u), then
//                    zh = argmin ||z' - (z - u)|| s.t. D z' in Gamma,
//                    stop on ||zh - z|| <= eps.
//   kSSpadeProposed  synthesis model; z = H_k(A (x - u)),
//                    x = P_Gamma(D z + u), stop on ||D z - x|| <= eps.
//
// Each iteration costs exactly one analysis and one synthesis. A-SPADE and
// the original S-SPADE additionally analyse the observed block once before
// the loop; those are reported separately as setup transforms.

#ifndef SPADE_SOLVERS_H_
#define SPADE_SOLVERS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spade/clip_model.h"
#include "spade/frame_transform.h"

namespace spade {

enum class Variant { kASpade, kSSpadeOriginal, kSSpadeProposed };

// "aspade", "sspade-o", "sspade-dp".
std::string_view VariantName(Variant v);
// Inverse of VariantName; std::nullopt for unknown names.
std::optional<Variant> ParseVariant(std::string_view name);

struct SpadeConfig {
  Variant variant = Variant::kASpade;
  std::size_t s = 1;        // sparsity increment
  std::size_t r = 1;        // relaxation period, in iterations
  double epsilon = 0.1;     // absolute residual bound
  // Iteration cap; unset means DefaultMaxIterations(P).
  std::optional<std::size_t> max_iter;
  // When false the epsilon test is skipped and every block runs max_iter
  // iterations.
  bool use_epsilon = true;

  // Throws InvariantError unless s, r >= 1, epsilon > 0, max_iter >= 1.
  void Validate() const;

  // r * ceil(G / s) + 1 with G = floor(P/2) + 1 groups: enough for k to reach
  // full support plus the iteration in which the dual variable collapses.
  std::size_t DefaultMaxIterations(std::size_t coeff_len) const;
  std::size_t MaxIterations(std::size_t coeff_len) const {
    return max_iter.value_or(DefaultMaxIterations(coeff_len));
  }
};

// k = s * (1 + floor(i / r)).
std::size_t RelaxationSchedule(std::size_t i, std::size_t s, std::size_t r);

struct TransformCounts {
  std::size_t analyses = 0;
  std::size_t syntheses = 0;

  friend bool operator==(const TransformCounts&,
                         const TransformCounts&) = default;
};

enum class Termination { kEpsilon, kIterationCap };

struct BlockResult {
  std::vector<double> restored;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  std::size_t final_k = 0;
  Termination terminated_by = Termination::kIterationCap;

  TransformCounts setup_transforms;  // before the first iteration
  TransformCounts loop_transforms;   // inside the iteration loop
};

// The per-block inputs shared by every variant. `thresholds` are the
// per-sample clipping levels (theta_c * window for windowed blocks).
struct BlockProblem {
  std::span<const double> observed;
  const ClipMask& mask;
  std::span<const double> thresholds;
};

// Snapshot of one finished iteration, for tests and diagnostics. Spans are
// only valid during the callback. Coefficient-domain fields that a variant
// does not have are empty (zhat outside the original S-SPADE, the
// coefficient dual in the proposed S-SPADE, the time-domain dual elsewhere).
struct IterationView {
  std::size_t iteration = 0;  // 0-based
  std::size_t k = 0;
  double residual = 0.0;
  std::span<const Complex> zbar;
  std::span<const Complex> zhat;
  std::span<const Complex> dual;
  std::span<const double> time_dual;
  std::span<const double> x;
};
using IterationObserver = std::function<void(const IterationView&)>;

// Each entry point requires cfg.variant to match (InvariantError otherwise)
// and the frame's block length to match the problem (DimensionError).
BlockResult SolveASpade(const BlockProblem& problem, const TightFrame& frame,
                        const SpadeConfig& cfg,
                        const IterationObserver& observer = {});
BlockResult SolveSSpadeOriginal(const BlockProblem& problem,
                                const TightFrame& frame,
                                const SpadeConfig& cfg,
                                const IterationObserver& observer = {});
BlockResult SolveSSpadeProposed(const BlockProblem& problem,
                                const TightFrame& frame,
                                const SpadeConfig& cfg,
                                const IterationObserver& observer = {});

// Dispatches on cfg.variant.
BlockResult SolveBlock(const BlockProblem& problem, const TightFrame& frame,
                       const SpadeConfig& cfg,
                       const IterationObserver& observer = {});

// The constrained coefficient step of the original S-SPADE:
//   argmin_z ||z - w||  s.t.  D z in Gamma,
// which for a Parseval tight frame is w + A (P_Gamma(D w) - D w).
Spectrum ProjectCoefficients(std::span<const Complex> w,
                             const BlockProblem& problem,
                             const TightFrame& frame);

}  // namespace spade

#endif  // SPADE_SOLVERS_H_
