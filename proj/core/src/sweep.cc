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

#include "spade/sweep.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "spade/clip_model.h"
#include "spade/errors.h"
#include "spade/metrics.h"
#include "spade/wav_io.h"

namespace spade {

namespace {

// Scales all channels of an item by the common peak.
CorpusItem NormalizeItem(const CorpusItem& item) {
  double peak = 0.0;
  for (const TimeSignal& ch : item.channels) {
    for (double v : ch.samples) peak = std::max(peak, std::abs(v));
  }
  CorpusItem out = item;
  if (peak > 0.0) {
    for (TimeSignal& ch : out.channels) {
      for (double& v : ch.samples) v /= peak;
    }
  }
  return out;
}

struct CellStats {
  double delta_sdr_sum = 0.0;
  std::size_t delta_sdr_count = 0;
  double iteration_sum = 0.0;
  std::size_t solved_blocks = 0;

  double MeanDeltaSdr() const {
    return delta_sdr_count == 0 ? std::numeric_limits<double>::quiet_NaN()
                                : delta_sdr_sum / static_cast<double>(delta_sdr_count);
  }
};

using Restorer = std::function<DeclipReport(const TimeSignal&, ClipLevel)>;

// Mean channel Delta-SDR of one item at one threshold; NaN if no channel was
// clipped.
double ItemDeltaSdr(const CorpusItem& item, ClipLevel level,
                    const Restorer& restore, CellStats& stats) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const TimeSignal& x : item.channels) {
    const TimeSignal y = Clip(x, level);
    const DeclipReport report = restore(y, level);
    for (const SolvedBlock& b : report.per_block) {
      stats.iteration_sum += static_cast<double>(b.result.iterations);
    }
    stats.solved_blocks += report.per_block.size();
    double d = std::numeric_limits<double>::quiet_NaN();
    try {
      d = DeltaSdr(x.samples, y.samples, report.restored.samples);
    } catch (const UndefinedInputError&) {
    }
    if (std::isfinite(d)) {
      sum += d;
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : sum / static_cast<double>(count);
}

void Accumulate(CellStats& stats, double item_delta) {
  if (std::isfinite(item_delta)) {
    stats.delta_sdr_sum += item_delta;
    ++stats.delta_sdr_count;
  }
}

}  // namespace

std::vector<double> DefaultThetaGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<std::size_t> DefaultIterationGrid() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 10; n <= 200; n += 10) grid.push_back(n);
  return grid;
}

std::vector<SweepCell> DefaultCells() {
  std::vector<SweepCell> cells{{Variant::kASpade, 1}};
  for (std::size_t r : {2, 4}) {
    for (Variant v : {Variant::kASpade, Variant::kSSpadeOriginal,
                      Variant::kSSpadeProposed}) {
      cells.push_back({v, r});
    }
  }
  return cells;
}

std::vector<SweepRow> RunThresholdSweep(const std::vector<CorpusItem>& corpus,
                                        const SweepSettings& settings) {
  if (corpus.empty()) throw InvariantError("threshold sweep: empty corpus");
  std::vector<CorpusItem> items;
  for (const CorpusItem& item : corpus) items.push_back(NormalizeItem(item));

  std::vector<SweepRow> rows;
  for (const SweepCell& cell : settings.cells) {
    FrameSpec spec = settings.spec;
    spec.redundancy = cell.redundancy;
    SpadeConfig cfg = settings.config;
    cfg.variant = cell.variant;
    const Restorer restore = [&](const TimeSignal& y, ClipLevel level) {
      return Declip(y, level, spec, cfg, settings.pipeline);
    };

    for (double theta : settings.thetas) {
      const auto t0 = std::chrono::steady_clock::now();
      const ClipLevel level(theta);
      CellStats stats;
      for (const CorpusItem& item : items) {
        Accumulate(stats, ItemDeltaSdr(item, level, restore, stats));
      }
      SweepRow row;
      row.algorithm = std::string(VariantName(cell.variant));
      row.redundancy = cell.redundancy;
      row.theta_c = theta;
      row.delta_sdr_db = stats.MeanDeltaSdr();
      row.avg_iterations =
          stats.solved_blocks == 0
              ? 0.0
              : stats.iteration_sum / static_cast<double>(stats.solved_blocks);
      row.wall_time_s = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<IterationRow> RunIterationSweep(
    const std::vector<CorpusItem>& corpus, const SweepSettings& settings,
    const std::vector<std::size_t>& iteration_grid) {
  if (iteration_grid.empty()) {
    throw InvariantError("iteration sweep: empty iteration grid");
  }
  if (corpus.empty()) throw InvariantError("iteration sweep: empty corpus");
  std::vector<CorpusItem> items;
  for (const CorpusItem& item : corpus) items.push_back(NormalizeItem(item));

  std::vector<std::size_t> grid = iteration_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<IterationRow> rows;
  for (const SweepCell& cell : settings.cells) {
    FrameSpec spec = settings.spec;
    spec.redundancy = cell.redundancy;
    SpadeConfig cfg = settings.config;
    cfg.variant = cell.variant;

    // One solver run per block serves every grid point.
    std::vector<CellStats> stats(grid.size());
    for (double theta : settings.thetas) {
      const ClipLevel level(theta);
      for (const CorpusItem& item : items) {
        std::vector<double> sum(grid.size(), 0.0);
        std::vector<std::size_t> count(grid.size(), 0);
        for (const TimeSignal& x : item.channels) {
          const TimeSignal y = Clip(x, level);
          const std::vector<TimeSignal> snaps = DeclipIterationSnapshots(
              y, level, spec, cfg, grid, settings.pipeline);
          for (std::size_t g = 0; g < grid.size(); ++g) {
            double d = std::numeric_limits<double>::quiet_NaN();
            try {
              d = DeltaSdr(x.samples, y.samples, snaps[g].samples);
            } catch (const UndefinedInputError&) {
            }
            if (std::isfinite(d)) {
              sum[g] += d;
              ++count[g];
            }
          }
        }
        for (std::size_t g = 0; g < grid.size(); ++g) {
          if (count[g] > 0) {
            Accumulate(stats[g], sum[g] / static_cast<double>(count[g]));
          }
        }
      }
    }
    // Rows follow the caller's grid order, duplicates included.
    for (std::size_t n_iter : iteration_grid) {
      const auto g = static_cast<std::size_t>(
          std::lower_bound(grid.begin(), grid.end(), n_iter) - grid.begin());
      rows.push_back({std::string(VariantName(cell.variant)), cell.redundancy,
                      n_iter, stats[g].MeanDeltaSdr()});
    }
  }
  return rows;
}

CorpusLoad LoadCorpus(const std::filesystem::path& dir) {
  CorpusLoad load;
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") files.push_back(entry.path());
  }
  if (ec) {
    load.errors.push_back(dir.string() + ": " + ec.message());
    return load;
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    try {
      WavAudio audio = ReadWav(path);
      load.items.push_back({path.filename().string(), std::move(audio.channels)});
    } catch (const std::exception& e) {
      load.errors.push_back(path.string() + ": " + e.what());
    }
  }
  return load;
}

}  // namespace spade
