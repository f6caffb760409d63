// Copyright 2026 The bbrecog Authors
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

#ifndef BBRECOG_KEYED_PERMUTATION_HPP_
#define BBRECOG_KEYED_PERMUTATION_HPP_

#include <array>
#include <cstdint>
#include <utility>

namespace bbrecog {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic key schedule from a seed and a domain-separation tag.
template <std::size_t N>
std::array<std::uint64_t, N> DeriveKeys(std::uint64_t seed,
                                        std::uint64_t tag) {
  std::array<std::uint64_t, N> keys{};
  std::uint64_t state = SplitMix64(seed ^ SplitMix64(tag));
  for (auto& key : keys) {
    state = SplitMix64(state);
    key = state;
  }
  return keys;
}

// Balanced Feistel network on 64-bit blocks (two 32-bit halves). Any round
// function yields a bijection, which is all the encodings need.
class Feistel64 {
 public:
  static constexpr int kRounds = 8;

  Feistel64() = default;
  explicit Feistel64(const std::array<std::uint64_t, kRounds>& keys)
      : keys_(keys) {}

  std::uint64_t Forward(std::uint64_t block) const {
    auto left = static_cast<std::uint32_t>(block >> 32);
    auto right = static_cast<std::uint32_t>(block);
    for (int i = 0; i < kRounds; ++i) {
      std::uint32_t next = left ^ Round(i, right);
      left = right;
      right = next;
    }
    return (std::uint64_t{left} << 32) | right;
  }

  std::uint64_t Backward(std::uint64_t block) const {
    auto left = static_cast<std::uint32_t>(block >> 32);
    auto right = static_cast<std::uint32_t>(block);
    for (int i = kRounds - 1; i >= 0; --i) {
      std::uint32_t prev = right ^ Round(i, left);
      right = left;
      left = prev;
    }
    return (std::uint64_t{left} << 32) | right;
  }

 private:
  std::uint32_t Round(int i, std::uint32_t half) const {
    return static_cast<std::uint32_t>(SplitMix64(half ^ keys_[i]));
  }

  std::array<std::uint64_t, kRounds> keys_{};
};

// Same construction on 128-bit blocks held as (hi, lo).
class Feistel128 {
 public:
  static constexpr int kRounds = 8;
  using Block = std::pair<std::uint64_t, std::uint64_t>;

  Feistel128() = default;
  explicit Feistel128(const std::array<std::uint64_t, kRounds>& keys)
      : keys_(keys) {}

  Block Forward(Block block) const {
    auto [left, right] = block;
    for (int i = 0; i < kRounds; ++i) {
      std::uint64_t next = left ^ Round(i, right);
      left = right;
      right = next;
    }
    return {left, right};
  }

  Block Backward(Block block) const {
    auto [left, right] = block;
    for (int i = kRounds - 1; i >= 0; --i) {
      std::uint64_t prev = right ^ Round(i, left);
      right = left;
      left = prev;
    }
    return {left, right};
  }

 private:
  std::uint64_t Round(int i, std::uint64_t half) const {
    return SplitMix64(SplitMix64(half ^ keys_[i]) + keys_[i]);
  }

  std::array<std::uint64_t, kRounds> keys_{};
};

}  // namespace bbrecog

#endif  // BBRECOG_KEYED_PERMUTATION_HPP_
