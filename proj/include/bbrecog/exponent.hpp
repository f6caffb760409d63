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

#ifndef BBRECOG_EXPONENT_HPP_
#define BBRECOG_EXPONENT_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "bbrecog/errors.hpp"

namespace bbrecog {

// Global exponents of the simulated groups reach p * (q^2 - 1) times a test
// factor, which overflows 64 bits for q near 2^31.
using Exponent = unsigned __int128;

// E = 2^t * m with m odd.
struct ExponentSplit {
  unsigned t = 0;
  Exponent m = 1;
};

inline ExponentSplit SplitExponent(Exponent e) {
  if (e == 0) throw Error(ErrorCode::kDomain, "exponent must be positive");
  ExponentSplit split;
  while ((e & 1) == 0) {
    e >>= 1;
    ++split.t;
  }
  split.m = e;
  return split;
}

inline std::string ToDecimal(Exponent e) {
  if (e == 0) return "0";
  std::string out;
  while (e != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(e % 10)));
    e /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline Exponent ParseDecimal(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::kConfig, "empty integer");
  Exponent value = 0;
  constexpr Exponent kMax = ~Exponent{0};
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw Error(ErrorCode::kConfig, "not a decimal integer: " +
                                          std::string(text));
    }
    auto digit = static_cast<unsigned>(ch - '0');
    if (value > (kMax - digit) / 10) {
      throw Error(ErrorCode::kConfig, "integer overflow: " + std::string(text));
    }
    value = value * 10 + digit;
  }
  return value;
}

// Number of bits in e; 0 for e == 0.
inline unsigned BitLength(Exponent e) {
  unsigned bits = 0;
  while (e != 0) {
    e >>= 1;
    ++bits;
  }
  return bits;
}

}  // namespace bbrecog

#endif  // BBRECOG_EXPONENT_HPP_
