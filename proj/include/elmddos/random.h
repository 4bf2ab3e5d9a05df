/*
 * Copyright 2026 The elmddos Authors.
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

#ifndef ELMDDOS_RANDOM_H_
#define ELMDDOS_RANDOM_H_

// Portable, fully specified random streams. Standard library distributions
// are implementation-defined, so every draw used for weights, shuffles and
// synthetic data goes through the functions below instead.
//
//   * Seeding: the 64-bit seed is expanded into the 256-bit state with four
//     consecutive SplitMix64 outputs.
//   * Generator: xoshiro256** (Blackman & Vigna, 2018).
//   * uniform01(): (next() >> 11) * 2^-53, i.e. a double in [0, 1).
//   * uniform(lo, hi): lo + (hi - lo) * uniform01().
//   * below(n): Lemire's multiply-shift with rejection, unbiased on [0, n).
//   * normal(): Box-Muller, cosine branch only; one normal per two uniforms.
//   * shuffle(): Fisher-Yates from the back, j = below(i + 1).

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace elmddos {

// One SplitMix64 finalization step.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stable 64-bit hash of a seed and a list of integer coordinates, used to
// give every (fold, configuration) its own independent stream.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  std::uint64_t salt = 1;
  for (std::uint64_t part : parts) {
    h = mix64(h ^ (part + 0x632BE59BD9B4E019ULL * salt));
    ++salt;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform01();
  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);
  double normal(double mean = 0.0, double stddev = 1.0);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace elmddos

#endif  // ELMDDOS_RANDOM_H_
