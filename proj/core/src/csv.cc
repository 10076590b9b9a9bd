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

#include "spade/csv.h"

#include <fmt/format.h>

#include <cmath>

namespace spade {

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // fmt ignores the global locale unless asked ('L'), so '.' is guaranteed.
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows,
                   const CsvOptions& opts) {
  out << "algorithm,redundancy,theta_c,delta_sdr_db,avg_iterations,wall_time_s\n";
  for (const SweepRow& r : rows) {
    out << r.algorithm << ',' << r.redundancy << ',' << fmt::format("{:.2f}", r.theta_c)
        << ',' << FormatNumber(r.delta_sdr_db) << ','
        << FormatNumber(r.avg_iterations) << ','
        << FormatNumber(opts.zero_timing ? 0.0 : r.wall_time_s) << '\n';
  }
}

void WriteIterationCsv(std::ostream& out, std::span<const IterationRow> rows) {
  out << "algorithm,redundancy,iterations,delta_sdr_db\n";
  for (const IterationRow& r : rows) {
    out << r.algorithm << ',' << r.redundancy << ',' << r.iterations << ','
        << FormatNumber(r.delta_sdr_db) << '\n';
  }
}

void WriteScatterCsv(std::ostream& out, std::span<const ScatterRow> rows) {
  out << "block_start,sdr_a_db,sdr_b_db\n";
  for (const ScatterRow& r : rows) {
    out << r.block_start << ',' << FormatNumber(r.sdr_a_db) << ','
        << FormatNumber(r.sdr_b_db) << '\n';
  }
}

}  // namespace spade
