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

#ifndef SPADE_HARD_THRESHOLD_H_
#define SPADE_HARD_THRESHOLD_H_

#include <cstddef>
#include <span>
#include <vector>

#include "spade/frame_transform.h"

namespace spade {

// Keeps the k largest-magnitude conjugate-pair groups of a conjugate-symmetric
// spectrum and zeroes the rest.
//
// Groups are the half-spectrum bins m = 0 .. floor(P/2); bin m and its mirror
// P - m form one group, DC (and Nyquist for even P) are singletons. Equal
// magnitudes are ranked by lower bin index. k >= floor(P/2) + 1 is the
// identity.
class HardThresholder {
 public:
  // Throws InvariantError if `z` is not conjugate-symmetric.
  Spectrum operator()(std::span<const Complex> z, std::size_t k);

  // In-place variant; `check_symmetry` can be disabled in hot loops whose
  // iterates are symmetric by construction.
  void Apply(std::span<Complex> z, std::size_t k, bool check_symmetry = true);

 private:
  std::vector<std::size_t> order_;
  std::vector<double> magnitude_;
};

inline Spectrum HardThreshold(std::span<const Complex> z, std::size_t k) {
  return HardThresholder{}(z, k);
}

}  // namespace spade

#endif  // SPADE_HARD_THRESHOLD_H_
