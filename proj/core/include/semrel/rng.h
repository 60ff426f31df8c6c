// Copyright 2026 The semrel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEMREL_RNG_H_
#define SEMREL_RNG_H_

#include <cstdint>

namespace semrel {

// SplitMix64 (Steele, Lea & Flood). Output is fully specified by the seed,
// so samples are byte-identical across platforms and standard libraries.
class SplitMix64 {
 public:
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr uint64_t kMul1 = 0xBF58476D1CE4E5B9ULL;
  static constexpr uint64_t kMul2 = 0x94D049BB133111EBULL;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * kMul1;
    z = (z ^ (z >> 27)) * kMul2;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) by rejection: draws below
  // (2^64 - bound) mod bound are discarded so every residue is equally
  // likely. bound must be non-zero.
  uint64_t uniform(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace semrel

#endif  // SEMREL_RNG_H_
