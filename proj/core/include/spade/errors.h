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

#ifndef SPADE_ERRORS_H_
#define SPADE_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spade {

// Operand sizes disagree (block vs. window length, spectrum vs. P, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural invariant of an input value is broken, e.g. a spectrum that
// is not conjugate-symmetric or a FrameSpec that is not COLA.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The observed signal cannot have been produced by hard clipping at the
// given level (some |y[n]| exceeds theta_c).
class InconsistentInputError : public std::runtime_error {
 public:
  InconsistentInputError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A metric was asked for on inputs where it is not defined (zero reference).
class UndefinedInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or unsupported audio file. `offset` is the byte position at which
// the problem was detected.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace spade

#endif  // SPADE_ERRORS_H_
