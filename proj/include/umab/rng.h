// Copyright 2026 The UMAB Authors. All rights reserved.
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

#ifndef UMAB_RNG_H_
#define UMAB_RNG_H_

// Counter-based generator. Draw i of stream (key) is
//   splitmix64_finalize(key + (i + 1) * 0x9E3779B97F4A7C15),
// so any draw can be reproduced from (key, i) alone and independent trials
// never share state.
//
// Seed scheme: trial i of an experiment with seed s uses key
// mix_seed(s, i); sub-streams (policy sampling, environment noise) derive
// their keys by mix_seed(trial_key, stream_id).

#include <cstdint>
#include <limits>

namespace umab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_finalize(splitmix64_finalize(seed) + (index + 1) * kGoldenGamma);
}

enum class Stream : std::uint64_t { kPolicy = 0, kEnvironment = 1 };

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t key, Stream stream)
      : key_(mix_seed(key, static_cast<std::uint64_t>(stream))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return splitmix64_finalize(key_ + ++counter_ * kGoldenGamma); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace umab

#endif  // UMAB_RNG_H_
