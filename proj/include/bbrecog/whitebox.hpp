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

#ifndef BBRECOG_WHITEBOX_HPP_
#define BBRECOG_WHITEBOX_HPP_

// Barrier around hidden decodings of simulated black boxes.
//
// Revealing or concealing elements of a simulated instance requires an open
// WhiteboxScope on the calling thread. Opening one requires a
// WhiteboxCapability, which only the adjoint oracles and the testing
// support header can construct. Recognition code has neither, so any
// attempt to peek at a hidden encoding from there throws kPurityViolation.

#include "bbrecog/errors.hpp"

namespace bbrecog {

class AdjointBundle;
class PglAdjointBundle;

namespace testing {
struct WhiteboxAccess;
}  // namespace testing

class WhiteboxCapability {
 private:
  WhiteboxCapability() = default;

  friend class AdjointBundle;
  friend class PglAdjointBundle;
  friend struct testing::WhiteboxAccess;
};

namespace whitebox_detail {
inline thread_local int scope_depth = 0;
}  // namespace whitebox_detail

class WhiteboxScope {
 public:
  explicit WhiteboxScope(const WhiteboxCapability&) {
    ++whitebox_detail::scope_depth;
  }
  ~WhiteboxScope() { --whitebox_detail::scope_depth; }

  WhiteboxScope(const WhiteboxScope&) = delete;
  WhiteboxScope& operator=(const WhiteboxScope&) = delete;
};

inline bool WhiteboxActive() { return whitebox_detail::scope_depth > 0; }

inline void RequireWhitebox(const char* what) {
  if (!WhiteboxActive()) {
    throw Error(ErrorCode::kPurityViolation,
                std::string(what) + " called outside a whitebox scope");
  }
}

}  // namespace bbrecog

#endif  // BBRECOG_WHITEBOX_HPP_
