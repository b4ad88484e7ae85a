// Copyright 2026 The QCIVET Authors
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

// Counter-based random streams.
//
// Algorithm (fixed; golden tests depend on it):
//   mix(z):   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//             z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//             z =  z ^ (z >> 31)                       (SplitMix64 finaliser)
//   key of a stream derived from seed and indices i1..ik:
//             key = mix(seed); key = mix(key ^ mix(i_j + GAMMA)) for each j
//   n-th draw of a stream: mix(key + (n + 1) * GAMMA), GAMMA = 0x9e3779b97f4a7c15
//   uniform double: top 53 bits of the draw times 2^-53, in [0, 1).
//
// A stream's output depends only on (seed, indices, n), so cells of a sweep
// can be evaluated in any order or in parallel and still reproduce.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace qcivet {

class RandomStream {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  explicit RandomStream(std::uint64_t seed) noexcept : key_(mix(seed)) {}

  /// Independent child stream identified by `indices`.
  RandomStream split(std::initializer_list<std::uint64_t> indices) const noexcept {
    RandomStream child(*this);
    for (std::uint64_t i : indices) child.key_ = mix(child.key_ ^ mix(i + kGamma));
    child.counter_ = 0;
    return child;
  }

  static RandomStream for_cell(std::uint64_t seed,
                               std::initializer_list<std::uint64_t> indices) noexcept {
    return RandomStream(seed).split(indices);
  }

  std::uint64_t next_u64() noexcept { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qcivet
