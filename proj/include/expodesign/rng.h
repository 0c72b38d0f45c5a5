// Copyright 2026 The Expodesign Authors.
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

#ifndef EXPODESIGN_RNG_H_
#define EXPODESIGN_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace expodesign {

// SplitMix64 finalizer. Used to turn user seeds into well-mixed engine seeds.
uint64_t MixSeed(uint64_t x);

// Seed for stream `stream` of `base_seed`. Replicate r of a simulation uses
// DeriveSeed(base_seed, r), so each replicate is reproducible on its own.
uint64_t DeriveSeed(uint64_t base_seed, uint64_t stream);

// Seedable generator with a fixed, platform-independent output sequence.
//
// The engine is std::mt19937_64, whose output is pinned by the standard. All
// derived variates are computed here rather than through <random>
// distributions, whose algorithms are implementation-defined:
//   * Uniform01: top 53 bits of one engine draw, scaled to [0, 1).
//   * UniformIndex: Lemire's multiply-shift with rejection.
//   * Normal: Marsaglia polar method; the second variate of each accepted
//     pair is cached and returned by the next call.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(MixSeed(seed)) {}

  // Independent child generator for `stream`; does not advance this one.
  Rng Split(uint64_t stream) const { return Rng(DeriveSeed(seed_, stream)); }

  uint64_t NextU64() { return engine_(); }
  double Uniform01();
  uint64_t UniformIndex(uint64_t n);
  bool Bernoulli(double p) { return Uniform01() < p; }
  double Normal(double mean, double variance);

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace expodesign

#endif  // EXPODESIGN_RNG_H_
