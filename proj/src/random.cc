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

#include "anomatch/random.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace anomatch {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::ForStream(std::uint64_t master_seed, StreamId stream) {
  std::uint64_t s = SplitMix64(master_seed);
  s = SplitMix64(s ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  return Rng(s);
}

std::size_t Rng::UniformIndex(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformIndex: bound is zero");
  const std::uint64_t b = bound;
  // Reject the low values that would bias the modulo.
  const std::uint64_t threshold = (0 - b) % b;
  std::uint64_t r = NextU64();
  while (r < threshold) r = NextU64();
  return static_cast<std::size_t>(r % b);
}

double Rng::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = UniformUnit();
  while (u1 <= 0.0) u1 = UniformUnit();
  const double u2 = UniformUnit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

std::vector<std::size_t> Rng::SampleWithoutReplacement(std::size_t population,
                                                       std::size_t count) {
  if (count > population) {
    throw std::invalid_argument("sample larger than population");
  }
  // Partial Fisher-Yates over an index array. O(population) memory is fine
  // for the graph sizes handled here.
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + UniformIndex(population - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace anomatch
