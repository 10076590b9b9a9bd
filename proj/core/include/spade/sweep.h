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

// Experiment drivers: average restoration quality over a corpus as a
// function of the clipping threshold, or of a fixed iteration count.

#ifndef SPADE_SWEEP_H_
#define SPADE_SWEEP_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "spade/frame_transform.h"
#include "spade/pipeline.h"
#include "spade/solvers.h"
#include "spade/test_signals.h"

namespace spade {

struct SweepCell {
  Variant variant = Variant::kASpade;
  std::size_t redundancy = 1;
};

// theta_c in {0.1, 0.2, ..., 0.9}.
std::vector<double> DefaultThetaGrid();
// {10, 20, ..., 200}.
std::vector<std::size_t> DefaultIterationGrid();
// (A-SPADE, 1), then A-SPADE / S-SPADE_O / S-SPADE_DP at R = 2 and R = 4.
std::vector<SweepCell> DefaultCells();

struct SweepSettings {
  FrameSpec spec;      // redundancy is overridden per cell
  SpadeConfig config;  // variant is overridden per cell
  std::vector<SweepCell> cells = DefaultCells();
  std::vector<double> thetas = DefaultThetaGrid();
  PipelineOptions pipeline;
};

struct SweepRow {
  std::string algorithm;
  std::size_t redundancy = 1;
  double theta_c = 0.0;
  // Unweighted mean over corpus items (each item averaged over channels).
  // NaN when no item had clipped samples at this threshold.
  double delta_sdr_db = 0.0;
  double avg_iterations = 0.0;  // per solved block
  double wall_time_s = 0.0;
};

struct IterationRow {
  std::string algorithm;
  std::size_t redundancy = 1;
  std::size_t iterations = 0;
  // Mean over items and the configured thresholds.
  double delta_sdr_db = 0.0;
};

// Rows are ordered by cell, then theta. Every item is peak-normalized before
// clipping.
std::vector<SweepRow> RunThresholdSweep(const std::vector<CorpusItem>& corpus,
                                        const SweepSettings& settings);

// Rows are ordered by cell, then grid point. Throws InvariantError for an
// empty grid.
std::vector<IterationRow> RunIterationSweep(
    const std::vector<CorpusItem>& corpus, const SweepSettings& settings,
    const std::vector<std::size_t>& iteration_grid);

struct CorpusLoad {
  std::vector<CorpusItem> items;
  std::vector<std::string> errors;  // one message per unreadable file
};

// Reads every *.wav file in `dir` (sorted by name). Unreadable files are
// reported in `errors` and skipped.
CorpusLoad LoadCorpus(const std::filesystem::path& dir);

}  // namespace spade

#endif  // SPADE_SWEEP_H_
