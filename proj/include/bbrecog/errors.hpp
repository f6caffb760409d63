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

#ifndef BBRECOG_ERRORS_HPP_
#define BBRECOG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bbrecog {

// Machine-readable failure classes. The CLI maps them onto exit codes.
enum class ErrorCode {
  kConfig,         // bad parameters: q, flavor, sample counts
  kNotSquare,      // only surfaced where a caller demanded a root
  kSingular,       // inversion of a det-zero matrix or of zero
  kInconsistent,   // contradictory linear system
  kDomain,         // input outside the documented domain
  kMalformedInput, // input failing its own consistency checks
  kExhausted,      // randomized search ran out of retries
  kLift,           // neither element of a center coset fits
  kNotInNormalizer,
  kConjugacy,
  kOddOrder,
  kInvalidHandle,    // handle does not decode to an element
  kPurityViolation,  // whitebox decoding outside an oracle/test scope
  kIo,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kNotSquare: return "not_square";
    case ErrorCode::kSingular: return "singular";
    case ErrorCode::kInconsistent: return "inconsistent";
    case ErrorCode::kDomain: return "domain_error";
    case ErrorCode::kMalformedInput: return "malformed_input";
    case ErrorCode::kExhausted: return "exhausted";
    case ErrorCode::kLift: return "lift_error";
    case ErrorCode::kNotInNormalizer: return "not_in_normalizer";
    case ErrorCode::kConjugacy: return "conjugacy_error";
    case ErrorCode::kOddOrder: return "odd_order";
    case ErrorCode::kInvalidHandle: return "invalid_handle";
    case ErrorCode::kPurityViolation: return "purity_violation";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bbrecog

#endif  // BBRECOG_ERRORS_HPP_
