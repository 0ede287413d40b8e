// Copyright 2026 The anomatch Authors
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

#ifndef ANOMATCH_RANDOM_H_
#define ANOMATCH_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace anomatch {

// Independent random streams derived from one master seed. Each consumer
// draws from its own stream so toggling one feature never perturbs another.
enum class StreamId : std::uint64_t {
  kInit = 1,
  kShuffle = 2,
  kNeighborNegatives = 3,
  kEgoNegatives = 4,
  kInjection = 5,
  kSynthetic = 6,
};

// 64-bit Mersenne twister plus distribution helpers whose output is fixed by
// this code rather than by the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng ForStream(std::uint64_t master_seed, StreamId stream);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::size_t UniformIndex(std::size_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformUnit() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformUnit(); }

  // Standard normal via Box-Muller; caches the second variate.
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = UniformIndex(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // `count` distinct values from [0, population), in draw order.
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t population,
                                                    std::size_t count);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace anomatch

#endif  // ANOMATCH_RANDOM_H_
