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

#include "spade/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "spade/errors.h"

namespace spade {

std::vector<PreparedBlock> PrepareBlocks(std::span<const double> y,
                                         const ClipMask& mask, ClipLevel level,
                                         const FrameSpec& spec) {
  if (mask.size() != y.size()) {
    throw DimensionError("PrepareBlocks: mask and signal lengths differ");
  }
  Segmentation seg = Segment(y, spec);
  const std::vector<double> w = MakeWindow(spec);
  const std::size_t n = spec.win_len;
  const auto len = static_cast<std::ptrdiff_t>(y.size());

  std::vector<PreparedBlock> blocks(seg.blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    PreparedBlock& pb = blocks[b];
    pb.start = seg.starts[b];
    pb.observed = std::move(seg.blocks[b]);
    pb.thresholds.resize(n);
    std::vector<SampleClass> labels(n, SampleClass::kReliable);
    for (std::size_t i = 0; i < n; ++i) {
      pb.thresholds[i] = level.theta_c() * w[i];
      const std::ptrdiff_t t = pb.start + static_cast<std::ptrdiff_t>(i);
      if (t >= 0 && t < len && w[i] > 0.0) {
        labels[i] = mask[static_cast<std::size_t>(t)];
      }
    }
    pb.mask = ClipMask(std::move(labels));
  }
  return blocks;
}

double DeclipReport::MeanIterations() const {
  if (per_block.empty()) return 0.0;
  double total = 0.0;
  for (const SolvedBlock& b : per_block) {
    total += static_cast<double>(b.result.iterations);
  }
  return total / static_cast<double>(per_block.size());
}

namespace {

struct Prepared {
  ClipMask mask;
  std::vector<PreparedBlock> blocks;
  std::vector<std::size_t> work;  // indices of blocks with clipped samples
};

Prepared Prepare(const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
                 const SpadeConfig& cfg) {
  spec.Validate();
  cfg.Validate();
  ValidateFinite(y.samples);
  Prepared p{.mask = DetectMask(y.samples, level)};
  if (y.samples.empty()) return p;
  p.blocks = PrepareBlocks(y.samples, p.mask, level, spec);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    if (p.blocks[b].mask.has_clipped()) p.work.push_back(b);
  }
  return p;
}

// Calls fn(frame, j) for j in [0, count) on a pool of workers, each owning
// its own TightFrame. The first exception is rethrown after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t count, const FrameSpec& spec,
                 const PipelineOptions& opts, Fn&& fn) {
  std::size_t threads = opts.threads != 0
                            ? opts.threads
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      TightFrame frame(spec);
      for (std::size_t j = next++; j < count; j = next++) fn(frame, j);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

// Overlap-adds the blocks and puts y back on the reliable samples.
std::vector<double> Assemble(const std::vector<std::vector<double>>& blocks,
                             const std::vector<std::ptrdiff_t>& starts,
                             const FrameSpec& spec, const TimeSignal& y,
                             const ClipMask& mask, std::size_t* guarded) {
  OverlapAddResult ola = OverlapAdd(blocks, starts, spec, y.samples.size());
  if (guarded != nullptr) *guarded = ola.guarded_positions;
  for (std::size_t t = 0; t < y.samples.size(); ++t) {
    if (mask[t] == SampleClass::kReliable) ola.samples[t] = y.samples[t];
  }
  return std::move(ola.samples);
}

DeclipReport Run(const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
                 const SpadeConfig& cfg, const PipelineOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Prepared p = Prepare(y, level, spec, cfg);

  DeclipReport report;
  report.restored.sample_rate = y.sample_rate;
  if (y.samples.empty()) return report;
  report.total_blocks = p.blocks.size();
  report.skipped_blocks = p.blocks.size() - p.work.size();

  std::vector<std::optional<BlockResult>> solved(p.blocks.size());
  ParallelFor(p.work.size(), spec, opts, [&](const TightFrame& frame, std::size_t j) {
    solved[p.work[j]] = SolveBlock(p.blocks[p.work[j]].problem(), frame, cfg);
  });

  std::vector<std::vector<double>> restored_blocks(p.blocks.size());
  std::vector<std::ptrdiff_t> starts(p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    starts[b] = p.blocks[b].start;
    if (solved[b]) {
      restored_blocks[b] = solved[b]->restored;
      report.per_block.push_back({b, p.blocks[b].start, std::move(*solved[b])});
    } else {
      restored_blocks[b] = std::move(p.blocks[b].observed);
    }
  }
  report.restored.samples = Assemble(restored_blocks, starts, spec, y, p.mask,
                                     &report.ola_guarded_positions);
  report.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return report;
}

}  // namespace

DeclipReport Declip(const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
                    const SpadeConfig& cfg, const PipelineOptions& opts) {
  return Run(y, level, spec, cfg, opts);
}

DeclipReport DeclipFixedIterations(const TimeSignal& y, ClipLevel level,
                                   const FrameSpec& spec,
                                   const SpadeConfig& cfg, std::size_t n_iter,
                                   const PipelineOptions& opts) {
  if (n_iter == 0) throw InvariantError("n_iter must be >= 1");
  SpadeConfig fixed = cfg;
  fixed.max_iter = n_iter;
  fixed.use_epsilon = false;
  return Run(y, level, spec, fixed, opts);
}

std::vector<TimeSignal> DeclipIterationSnapshots(
    const TimeSignal& y, ClipLevel level, const FrameSpec& spec,
    const SpadeConfig& cfg, std::span<const std::size_t> grid,
    const PipelineOptions& opts) {
  if (grid.empty() || grid.front() == 0 ||
      !std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw InvariantError("snapshot grid must be strictly increasing and >= 1");
  }
  SpadeConfig fixed = cfg;
  fixed.max_iter = grid.back();
  fixed.use_epsilon = false;
  Prepared p = Prepare(y, level, spec, fixed);

  std::vector<TimeSignal> out(grid.size(), TimeSignal{{}, y.sample_rate});
  if (y.samples.empty()) return out;

  // snaps[j][g]: block work[j] after grid[g] iterations.
  std::vector<std::vector<std::vector<double>>> snaps(p.work.size());
  ParallelFor(p.work.size(), spec, opts, [&](const TightFrame& frame, std::size_t j) {
    auto& mine = snaps[j];
    mine.reserve(grid.size());
    std::size_t g = 0;
    SolveBlock(p.blocks[p.work[j]].problem(), frame, fixed,
               [&](const IterationView& it) {
                 if (g < grid.size() && it.iteration + 1 == grid[g]) {
                   mine.emplace_back(it.x.begin(), it.x.end());
                   ++g;
                 }
               });
  });

  std::vector<std::ptrdiff_t> starts(p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) starts[b] = p.blocks[b].start;
  std::vector<std::vector<double>> blocks(p.blocks.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t b = 0; b < p.blocks.size(); ++b) blocks[b] = p.blocks[b].observed;
    for (std::size_t j = 0; j < p.work.size(); ++j) blocks[p.work[j]] = snaps[j][g];
    out[g].samples = Assemble(blocks, starts, spec, y, p.mask, nullptr);
  }
  return out;
}

}  // namespace spade
