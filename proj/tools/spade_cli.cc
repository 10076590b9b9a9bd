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
// spade: clip, declip and evaluate audio; run corpus sweeps.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 malformed or unsupported
// input (WAV format, mismatched lengths), 3 clipped input inconsistent with
// --theta.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "spade/clip_model.h"
#include "spade/csv.h"
#include "spade/errors.h"
#include "spade/metrics.h"
#include "spade/pipeline.h"
#include "spade/sweep.h"
#include "spade/test_signals.h"
#include "spade/wav_io.h"

namespace {

using namespace spade;

constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitInconsistent = 3;

WavEncoding ParseEncoding(const std::string& name) {
  return name == "pcm16" ? WavEncoding::kPcm16 : WavEncoding::kFloat32;
}

struct FrameOptions {
  std::size_t win = 1024;
  std::size_t hop = 256;
  std::size_t threads = 0;
  std::string window = "hann";

  void Add(CLI::App* app) {
    app->add_option("--win", win, "Window length in samples")->capture_default_str();
    app->add_option("--hop", hop, "Hop size in samples")->capture_default_str();
    app->add_option("--window", window, "Analysis window")
        ->check(CLI::IsMember({"hann", "rect"}))
        ->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
  }
  FrameSpec Spec(std::size_t redundancy) const {
    return {.win_len = win, .hop = hop, .redundancy = redundancy,
            .window = window == "rect" ? WindowKind::kRectangular : WindowKind::kHann};
  }
};

struct SolverOptions {
  std::size_t s = 1;
  std::size_t r = 1;
  double epsilon = 0.1;
  std::optional<std::size_t> max_iter;

  void Add(CLI::App* app) {
    app->add_option("--s", s, "Sparsity increment")->capture_default_str();
    app->add_option("--r", r, "Relaxation period")->capture_default_str();
    app->add_option("--epsilon", epsilon, "Stopping tolerance")->capture_default_str();
    app->add_option("--max-iter", max_iter, "Iteration cap (default: until full support)");
  }
  SpadeConfig Config(Variant v) const {
    return {.variant = v, .s = s, .r = r, .epsilon = epsilon, .max_iter = max_iter};
  }
};

// --- clip ------------------------------------------------------------------

struct ClipArgs {
  double theta = 0.0;
  bool normalize = false;
  std::string encoding = "float32";
  std::string in, out;
};

int RunClip(const ClipArgs& a) {
  const ClipLevel level(a.theta);
  WavAudio audio = ReadWav(a.in);
  double peak = 0.0;
  for (const TimeSignal& ch : audio.channels) {
    for (double v : ch.samples) peak = std::max(peak, std::abs(v));
  }
  std::size_t clipped = 0, total = 0;
  for (TimeSignal& ch : audio.channels) {
    if (a.normalize && peak > 0.0) {
      for (double& v : ch.samples) v /= peak;
    }
    ch = Clip(ch, level);
    clipped += DetectMask(ch.samples, level).clipped_count();
    total += ch.size();
  }
  WriteWav(a.out, audio.channels, ParseEncoding(a.encoding));
  fmt::print("clipped {} of {} samples ({:.2f}%) at theta {}\n", clipped, total,
             total ? 100.0 * static_cast<double>(clipped) / static_cast<double>(total)
                   : 0.0,
             a.theta);
  return 0;
}

// --- declip ----------------------------------------------------------------

struct DeclipArgs {
  std::string algorithm = "aspade";
  double theta = 0.0;
  std::size_t redundancy = 1;
  std::optional<std::size_t> fixed_iter;
  FrameOptions frame;
  SolverOptions solver;
  std::string in, out;
};

// Stored clipped files carry the threshold only up to the sample format's
// resolution: float32 may round theta up, PCM16 to the nearest step. Samples
// within half a step of +/-theta are put back on it; anything further above
// theta is left for the mask detector to reject.
void SnapToLevel(TimeSignal& y, double theta, WavEncoding encoding) {
  const double tol = encoding == WavEncoding::kPcm16 ? 0.5 / 32768.0
                                                     : theta * 0x1.0p-23;
  for (double& v : y.samples) {
    if (std::abs(std::abs(v) - theta) <= tol) v = std::copysign(theta, v);
  }
}

int RunDeclip(const DeclipArgs& a) {
  const Variant variant = *ParseVariant(a.algorithm);
  const ClipLevel level(a.theta);
  const FrameSpec spec = a.frame.Spec(a.redundancy);
  spec.Validate();
  const SpadeConfig cfg = a.solver.Config(variant);
  cfg.Validate();
  const PipelineOptions opts{.threads = a.frame.threads};

  WavAudio audio = ReadWav(a.in);
  std::vector<TimeSignal> restored;
  for (std::size_t c = 0; c < audio.channels.size(); ++c) {
    TimeSignal& y = audio.channels[c];
    SnapToLevel(y, a.theta, audio.encoding);
    const DeclipReport r =
        a.fixed_iter ? DeclipFixedIterations(y, level, spec, cfg, *a.fixed_iter, opts)
                     : Declip(y, level, spec, cfg, opts);
    fmt::print("channel {}: {} blocks, {} solved, mean iterations {:.1f}, {:.2f} s\n",
               c, r.total_blocks, r.total_blocks - r.skipped_blocks,
               r.MeanIterations(), r.wall_time);
    restored.push_back(r.restored);
  }
  WriteWav(a.out, restored, WavEncoding::kFloat32);
  return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string original, clipped, restored;
};

int RunEval(const EvalArgs& a) {
  const WavAudio x = ReadWav(a.original);
  const WavAudio y = ReadWav(a.clipped);
  const WavAudio xh = ReadWav(a.restored);
  if (x.channels.size() != y.channels.size() ||
      x.channels.size() != xh.channels.size()) {
    throw DimensionError("eval: channel counts differ");
  }
  for (std::size_t c = 0; c < x.channels.size(); ++c) {
    const auto& xs = x.channels[c].samples;
    const auto& ys = y.channels[c].samples;
    const auto& hs = xh.channels[c].samples;
    if (xs.size() != ys.size() || xs.size() != hs.size()) {
      throw DimensionError("eval: signal lengths differ");
    }
    const double sdr_y = Sdr(xs, ys);
    const double sdr_h = Sdr(xs, hs);
    fmt::print("channel {}: SDR(clipped) = {} dB, SDR(restored) = {} dB, "
               "delta SDR = {} dB\n",
               c, FormatNumber(sdr_y), FormatNumber(sdr_h),
               FormatNumber(DeltaSdr(xs, ys, hs)));
  }
  return 0;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string mode = "threshold";
  std::string corpus;
  std::size_t synthetic = 0;
  std::uint64_t seed = 2018;
  std::string out;
  bool deterministic = false;
  std::vector<double> thetas;
  std::vector<std::size_t> iterations;
  std::vector<std::string> cells;
  FrameOptions frame;
  SolverOptions solver;
};

std::vector<SweepCell> ParseCells(const std::vector<std::string>& specs) {
  std::vector<SweepCell> cells;
  for (const std::string& s : specs) {
    const auto colon = s.find(':');
    const auto v = ParseVariant(s.substr(0, colon));
    if (!v || colon == std::string::npos) {
      throw CLI::ValidationError("--cell", "expected ALGORITHM:R, got " + s);
    }
    cells.push_back({*v, std::stoul(s.substr(colon + 1))});
  }
  return cells;
}

int RunSweep(const SweepArgs& a) {
  std::vector<CorpusItem> corpus;
  if (!a.corpus.empty()) {
    CorpusLoad load = LoadCorpus(a.corpus);
    for (const std::string& e : load.errors) fmt::print(stderr, "skipped {}\n", e);
    corpus = std::move(load.items);
    if (corpus.empty()) throw FormatError("no readable WAV files in " + a.corpus, 0);
  } else {
    corpus = MakeSyntheticCorpus(a.synthetic, a.seed);
  }

  SweepSettings s;
  s.spec = a.frame.Spec(1);
  s.config = a.solver.Config(Variant::kASpade);
  s.pipeline.threads = a.deterministic ? 1 : a.frame.threads;
  if (!a.cells.empty()) s.cells = ParseCells(a.cells);
  if (!a.thetas.empty()) s.thetas = a.thetas;

  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot open " + a.out);
  if (a.mode == "threshold") {
    const std::vector<SweepRow> rows = RunThresholdSweep(corpus, s);
    WriteSweepCsv(out, rows, {.zero_timing = a.deterministic});
  } else {
    const std::vector<std::size_t> grid =
        a.iterations.empty() ? DefaultIterationGrid() : a.iterations;
    WriteIterationCsv(out, RunIterationSweep(corpus, s, grid));
  }
  fmt::print("wrote {}\n", a.out);
  return 0;
}

// --- scatter ---------------------------------------------------------------

struct ScatterArgs {
  std::string original, clipped, restored_a, restored_b, out;
  std::size_t blocks = 2048;
};

int RunScatter(const ScatterArgs& a) {
  const WavAudio x = ReadWav(a.original);
  const WavAudio y = ReadWav(a.clipped);
  const WavAudio ra = ReadWav(a.restored_a);
  const WavAudio rb = ReadWav(a.restored_b);
  // Blocks are taken from the first channel.
  const std::vector<ScatterRow> rows =
      BlockScatter(x.channels.at(0).samples, y.channels.at(0).samples,
                   ra.channels.at(0).samples, rb.channels.at(0).samples, a.blocks);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot open " + a.out);
  WriteScatterCsv(out, rows);
  fmt::print("wrote {} rows to {}\n", rows.size(), a.out);
  return 0;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  std::size_t count = 5;
  std::uint64_t seed = 2018;
};

int RunSynth(const SynthArgs& a) {
  std::filesystem::create_directories(a.out_dir);
  for (const CorpusItem& item : MakeSyntheticCorpus(a.count, a.seed)) {
    const auto path = std::filesystem::path(a.out_dir) / (item.name + ".wav");
    WriteWav(path, item.channels, WavEncoding::kFloat32);
    fmt::print("wrote {}\n", path.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPADE audio declipping"};
  app.require_subcommand(1);

  ClipArgs clip;
  auto* c = app.add_subcommand("clip", "Hard-clip a WAV file at +/- theta");
  c->add_option("--theta", clip.theta, "Clipping threshold")->required();
  c->add_flag("--normalize", clip.normalize, "Peak-normalize before clipping");
  c->add_option("--encoding", clip.encoding, "Output sample format")
      ->check(CLI::IsMember({"float32", "pcm16"}))
      ->capture_default_str();
  c->add_option("in", clip.in)->required();
  c->add_option("out", clip.out)->required();

  DeclipArgs declip;
  auto* d = app.add_subcommand("declip", "Restore a hard-clipped WAV file");
  d->add_option("--algorithm", declip.algorithm)
      ->check(CLI::IsMember({"aspade", "sspade-o", "sspade-dp"}))
      ->capture_default_str();
  d->add_option("--theta", declip.theta, "Clipping threshold of the input")->required();
  d->add_option("--redundancy", declip.redundancy, "Frame redundancy")
      ->check(CLI::IsMember({1, 2, 4}))
      ->capture_default_str();
  declip.frame.Add(d);
  declip.solver.Add(d);
  d->add_option("--fixed-iter", declip.fixed_iter,
                "Run exactly N iterations per block, ignoring --epsilon");
  d->add_option("in", declip.in)->required();
  d->add_option("out", declip.out)->required();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Print SDR and delta SDR");
  e->add_option("--original", eval.original)->required();
  e->add_option("--clipped", eval.clipped)->required();
  e->add_option("--restored", eval.restored)->required();

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Average delta SDR over a corpus");
  s->add_option("--mode", sweep.mode)
      ->check(CLI::IsMember({"threshold", "iterations"}))
      ->capture_default_str();
  auto* corpus_opt = s->add_option("--corpus", sweep.corpus, "Directory of WAV files");
  auto* synth_opt =
      s->add_option("--synthetic", sweep.synthetic, "Use N generated signals instead");
  corpus_opt->excludes(synth_opt);
  s->add_option("--seed", sweep.seed, "Seed for --synthetic")->capture_default_str();
  s->add_option("--out", sweep.out, "CSV output path")->required();
  s->add_option("--theta", sweep.thetas, "Thresholds (default 0.1..0.9)");
  s->add_option("--iterations", sweep.iterations, "Iteration grid (default 10..200)");
  s->add_option("--cell", sweep.cells, "ALGORITHM:R pairs (default: all)");
  s->add_flag("--deterministic", sweep.deterministic,
              "Single thread, zero timing column: byte-identical output");
  sweep.frame.Add(s);
  sweep.solver.Add(s);
  s->callback([&] {
    if (sweep.corpus.empty() && sweep.synthetic == 0) {
      throw CLI::RequiredError("--corpus or --synthetic");
    }
  });

  ScatterArgs scatter;
  auto* sc = app.add_subcommand("scatter", "Per-block SDR of two restorations");
  sc->add_option("--original", scatter.original)->required();
  sc->add_option("--clipped", scatter.clipped)->required();
  sc->add_option("--restored-a", scatter.restored_a)->required();
  sc->add_option("--restored-b", scatter.restored_b)->required();
  sc->add_option("--blocks", scatter.blocks, "Block length")->capture_default_str();
  sc->add_option("--out", scatter.out)->required();

  SynthArgs synth;
  auto* sy = app.add_subcommand("synth", "Write the synthetic test corpus");
  sy->add_option("--out-dir", synth.out_dir)->required();
  sy->add_option("--count", synth.count)->capture_default_str();
  sy->add_option("--seed", synth.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c->parsed()) return RunClip(clip);
    if (d->parsed()) return RunDeclip(declip);
    if (e->parsed()) return RunEval(eval);
    if (s->parsed()) return RunSweep(sweep);
    if (sc->parsed()) return RunScatter(scatter);
    if (sy->parsed()) return RunSynth(synth);
  } catch (const FormatError& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitFormat;
  } catch (const DimensionError& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitFormat;
  } catch (const InconsistentInputError& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitInconsistent;
  } catch (const std::exception& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitUsage;
  }
  return kExitUsage;
}
