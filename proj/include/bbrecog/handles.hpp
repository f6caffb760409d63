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

#ifndef BBRECOG_HANDLES_HPP_
#define BBRECOG_HANDLES_HPP_

#include <atomic>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

#include "bbrecog/errors.hpp"

namespace bbrecog {

namespace handle_detail {

inline void AppendHex(std::string& out, std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  out.append(buf, 16);
}

inline std::uint64_t ParseHex64(std::string_view text) {
  std::uint64_t v = 0;
  for (char ch : text) {
    unsigned digit;
    if (ch >= '0' && ch <= '9') {
      digit = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      digit = static_cast<unsigned>(ch - 'a' + 10);
    } else {
      throw Error(ErrorCode::kInvalidHandle,
                  "handles are lowercase hex: " + std::string(text));
    }
    v = (v << 4) | digit;
  }
  return v;
}

}  // namespace handle_detail

// Opaque 8-byte field element.
struct FieldHandle {
  std::uint64_t bits = 0;

  static constexpr std::size_t kWidth = 8;

  friend bool operator==(const FieldHandle&, const FieldHandle&) = default;
  friend auto operator<=>(const FieldHandle&, const FieldHandle&) = default;

  std::string ToHex() const {
    std::string out;
    handle_detail::AppendHex(out, bits);
    return out;
  }

  static FieldHandle FromHex(std::string_view text) {
    if (text.size() != 2 * kWidth) {
      throw Error(ErrorCode::kInvalidHandle, "field handle must be 16 hex");
    }
    return FieldHandle{handle_detail::ParseHex64(text)};
  }
};

// Opaque 16-byte group element.
struct GroupHandle {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  static constexpr std::size_t kWidth = 16;

  friend bool operator==(const GroupHandle&, const GroupHandle&) = default;
  friend auto operator<=>(const GroupHandle&, const GroupHandle&) = default;

  std::string ToHex() const {
    std::string out;
    handle_detail::AppendHex(out, hi);
    handle_detail::AppendHex(out, lo);
    return out;
  }

  static GroupHandle FromHex(std::string_view text) {
    if (text.size() != 2 * kWidth) {
      throw Error(ErrorCode::kInvalidHandle, "group handle must be 32 hex");
    }
    return GroupHandle{handle_detail::ParseHex64(text.substr(0, 16)),
                       handle_detail::ParseHex64(text.substr(16))};
  }
};

// Relaxed atomic tally that stays copyable.
class OpCounter {
 public:
  OpCounter() = default;
  OpCounter(const OpCounter& other) : n_(other.value()) {}
  OpCounter& operator=(const OpCounter& other) {
    n_.store(other.value(), std::memory_order_relaxed);
    return *this;
  }

  void Bump() const { n_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t value() const { return n_.load(std::memory_order_relaxed); }
  void Reset() const { n_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> n_{0};
};

}  // namespace bbrecog

template <>
struct std::hash<bbrecog::FieldHandle> {
  std::size_t operator()(const bbrecog::FieldHandle& h) const noexcept {
    return std::hash<std::uint64_t>{}(h.bits);
  }
};

template <>
struct std::hash<bbrecog::GroupHandle> {
  std::size_t operator()(const bbrecog::GroupHandle& h) const noexcept {
    return std::hash<std::uint64_t>{}(h.hi * 0x9e3779b97f4a7c15ULL ^ h.lo);
  }
};

#endif  // BBRECOG_HANDLES_HPP_
