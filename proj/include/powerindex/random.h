/*
 * Copyright 2026 The powerindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef POWERINDEX_RANDOM_H_
#define POWERINDEX_RANDOM_H_

#include <cstdint>
#include <limits>

namespace powerindex {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless keyed generator: the word for (stream, counter) depends only on
// the key and the two indices, so any partition of the counter range across
// threads reproduces the sequential stream exactly.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : key_(Mix64(seed)) {}

  constexpr std::uint64_t operator()(std::uint64_t stream,
                                     std::uint64_t counter) const {
    return Mix64(Mix64(key_ ^ Mix64(stream)) + counter);
  }

  // Derives an independent seed for a sub-stream (per trial, per run).
  constexpr std::uint64_t Derive(std::uint64_t stream) const {
    return (*this)(stream, 0x5eedULL);
  }

 private:
  std::uint64_t key_;
};

// Sequential SplitMix64 engine; a UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Uniform double in [0, 1) from the top 53 bits of a word.
constexpr double UnitInterval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1p-53;
}

// Uniform integer in [lo, hi] by rejection; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::int64_t UniformInt(SplitMix64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace powerindex

#endif  // POWERINDEX_RANDOM_H_
