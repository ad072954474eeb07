// Copyright 2026 The pauliprop authors
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

#pragma once

#include <cstdint>

namespace pauliprop {

/// Counter-based 64-bit generator.
///
/// Output word k of stream (seed, stream) is
///   mix64(mix64(seed ^ mix64(stream + GOLDEN)) + (k + 1) * GOLDEN)
/// where mix64 is the SplitMix64 finalizer and GOLDEN = 0x9E3779B97F4A7C15.
/// The mapping is pure integer arithmetic, so sequences are identical on any
/// platform, and independent substreams are cheap to derive.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Derives the key of substream `stream` of `seed`. Used for per-tree and
  /// per-instance seeding.
  static constexpr std::uint64_t derive(std::uint64_t seed,
                                        std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + kGolden));
  }

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive(seed, stream)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform integer in [0, bound). bound must be nonzero. Modulo reduction:
  /// the bias is below 2^-32 for the bounds used here and the mapping stays
  /// platform-independent.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pauliprop
