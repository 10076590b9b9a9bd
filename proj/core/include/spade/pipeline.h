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

#ifndef SPADE_PIPELINE_H_
#define SPADE_PIPELINE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "spade/clip_model.h"
#include "spade/frame_transform.h"
#include "spade/solvers.h"

namespace spade {

// One windowed block of a clipped signal, ready for a solver.
struct PreparedBlock {
  std::ptrdiff_t start = 0;
  std::vector<double> observed;    // window * y, zero outside the signal
  std::vector<double> thresholds;  // theta_c * window
  ClipMask mask;                   // zero-window and padding samples are R

  BlockProblem problem() const { return {observed, mask, thresholds}; }
};

// Segments y and slices the full-signal mask into per-block problems.
std::vector<PreparedBlock> PrepareBlocks(std::span<const double> y,
                                         const ClipMask& mask, ClipLevel level,
                                         const FrameSpec& spec);

struct SolvedBlock {
  std::size_t block_index = 0;
  std::ptrdiff_t start = 0;
  BlockResult result;
};

struct DeclipReport {
  TimeSignal restored;
  std::vector<SolvedBlock> per_block;  // ascending block_index
  std::size_t total_blocks = 0;
  std::size_t skipped_blocks = 0;      // no clipped samples, passed through
  std::size_t ola_guarded_positions = 0;
  double wall_time = 0.0;              // seconds

  double MeanIterations() const;
};

struct PipelineOptions {
  // Worker threads for block solving; 0 picks hardware_concurrency().
  std::size_t threads = 0;
};

// Restores a hard-clipped signal block by block and reassembles it with
// overlap-add; reliable samples of the result equal y exactly. Throws
// InconsistentInputError when |y| exceeds theta_c anywhere.
DeclipReport Declip(const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
                    const SpadeConfig& cfg, const PipelineOptions& opts = {});

// As Declip, but every block runs exactly n_iter iterations with the epsilon
// test disabled. Throws InvariantError for n_iter == 0.
DeclipReport DeclipFixedIterations(const TimeSignal& y, ClipLevel level,
                                   const FrameSpec& spec,
                                   const SpadeConfig& cfg, std::size_t n_iter,
                                   const PipelineOptions& opts = {});

// Outputs of DeclipFixedIterations for every n in `grid` from one solver run
// per block: with the epsilon test off, the first n iterations of a longer
// run are the n-iteration run. `grid` must be strictly increasing and start
// at 1 or more (InvariantError otherwise).
std::vector<TimeSignal> DeclipIterationSnapshots(
    const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
    const SpadeConfig& cfg, std::span<const std::size_t> grid,
    const PipelineOptions& opts = {});

}  // namespace spade

#endif  // SPADE_PIPELINE_H_
