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

// Plot-ready CSV output. Every table starts with a header row; numbers use
// '.' as the decimal separator regardless of locale; +/-infinity and NaN are
// written as "inf", "-inf" and "nan".

#ifndef SPADE_CSV_H_
#define SPADE_CSV_H_

#include <ostream>
#include <span>
#include <string>

#include "spade/metrics.h"
#include "spade/sweep.h"

namespace spade {

// Fixed six-decimal rendering with the special values above.
std::string FormatNumber(double v);

struct CsvOptions {
  // Write wall_time_s as 0 so that output is byte-identical across runs.
  bool zero_timing = false;
};

// algorithm,redundancy,theta_c,delta_sdr_db,avg_iterations,wall_time_s
void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows,
                   const CsvOptions& opts = {});
// algorithm,redundancy,iterations,delta_sdr_db
void WriteIterationCsv(std::ostream& out, std::span<const IterationRow> rows);
// block_start,sdr_a_db,sdr_b_db
void WriteScatterCsv(std::ostream& out, std::span<const ScatterRow> rows);

}  // namespace spade

#endif  // SPADE_CSV_H_
