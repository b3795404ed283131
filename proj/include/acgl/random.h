// Copyright 2026 The acgl Authors.
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

#ifndef ACGL_RANDOM_H_
#define ACGL_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace acgl {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the distributions below are implemented here
// rather than taken from <random>, whose algorithms vary between standard
// libraries. This keeps every stream identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t UniformIndex(std::uint64_t n);

  // Standard normal via Box-Muller; the second variate is cached.
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

  // Fisher-Yates shuffle driven by UniformIndex.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformIndex(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer. Used to derive independent named seeds from one
// global seed.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace acgl

#endif  // ACGL_RANDOM_H_
