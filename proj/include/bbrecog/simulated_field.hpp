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

#ifndef BBRECOG_SIMULATED_FIELD_HPP_
#define BBRECOG_SIMULATED_FIELD_HPP_

#include <cstdint>
#include <random>

#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/handles.hpp"
#include "bbrecog/keyed_permutation.hpp"
#include "bbrecog/plain_field.hpp"
#include "bbrecog/whitebox.hpp"

namespace bbrecog {

// kExact publishes E = q - 1. kMultiple publishes (q - 1) times a small odd
// factor and an extra power of two, derived from the seed, so that callers
// cannot get away with assuming E = |K*|.
enum class ExponentMode { kExact, kMultiple };

struct FieldTally {
  std::uint64_t add = 0;
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t total() const { return add + mul + inv; }
};

// A black box field encrypting F_q: handles are the images of element
// indices under a keyed 64-bit permutation, so every element has exactly one
// handle and equality is equality of bits.
class SimulatedField {
 public:
  using Element = FieldHandle;

  SimulatedField(std::uint64_t q, std::uint64_t seed,
                 ExponentMode mode = ExponentMode::kExact)
      : plain_(q),
        seed_(seed),
        mode_(mode),
        perm_(DeriveKeys<Feistel64::kRounds>(seed, 0xf1e1d)) {
    exponent_ = q - 1;
    if (mode == ExponentMode::kMultiple) {
      auto keys = DeriveKeys<2>(seed, 0xe4a);
      Exponent odd = 3 + 2 * (keys[0] % 8);    // 3..17
      unsigned extra = 1 + static_cast<unsigned>(keys[1] % 3);  // 1..3
      exponent_ = exponent_ * odd << extra;
    }
    zero_ = Encode(0);
    one_ = Encode(1);
  }

  std::uint64_t seed() const { return seed_; }
  ExponentMode exponent_mode() const { return mode_; }
  std::size_t handle_width() const { return FieldHandle::kWidth; }
  Exponent exponent() const { return exponent_; }

  Element zero() const { return zero_; }
  Element one() const { return one_; }

  Element add(const Element& a, const Element& b) const {
    tally_add_.Bump();
    return Encode(plain_.add(Decode(a), Decode(b)));
  }
  Element neg(const Element& a) const {
    tally_add_.Bump();
    return Encode(plain_.neg(Decode(a)));
  }
  Element mul(const Element& a, const Element& b) const {
    tally_mul_.Bump();
    return Encode(plain_.mul(Decode(a), Decode(b)));
  }
  Element inv(const Element& a) const {
    tally_inv_.Bump();
    return Encode(plain_.inv(Decode(a)));
  }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a == zero_; }

  Element random(Rng& rng) const { return Encode(plain_.random(rng)); }

  // Rejects byte strings that are not the encoding of any element.
  bool is_valid(const Element& a) const {
    return perm_.Backward(a.bits) < plain_.q();
  }

  FieldTally tally() const {
    return {tally_add_.value(), tally_mul_.value(), tally_inv_.value()};
  }
  void reset_tally() const {
    tally_add_.Reset();
    tally_mul_.Reset();
    tally_inv_.Reset();
  }

  // Whitebox access; each call requires an open WhiteboxScope.
  std::uint64_t Reveal(const Element& a) const {
    RequireWhitebox("SimulatedField::Reveal");
    return Decode(a);
  }
  Element Conceal(std::uint64_t x) const {
    RequireWhitebox("SimulatedField::Conceal");
    if (!plain_.is_valid(x)) {
      throw Error(ErrorCode::kDomain, "value outside F_q");
    }
    return Encode(x);
  }
  const PlainField& Plain() const {
    RequireWhitebox("SimulatedField::Plain");
    return plain_;
  }

 private:
  Element Encode(std::uint64_t x) const { return Element{perm_.Forward(x)}; }

  std::uint64_t Decode(const Element& a) const {
    std::uint64_t x = perm_.Backward(a.bits);
    if (x >= plain_.q()) {
      throw Error(ErrorCode::kInvalidHandle,
                  "handle " + a.ToHex() + " is not a field element");
    }
    return x;
  }

  PlainField plain_;
  std::uint64_t seed_;
  ExponentMode mode_;
  Feistel64 perm_;
  Exponent exponent_ = 0;
  Element zero_;
  Element one_;
  OpCounter tally_add_;
  OpCounter tally_mul_;
  OpCounter tally_inv_;
};

static_assert(BlackBoxField<SimulatedField>);
static_assert(BlackBoxField<PlainField>);

}  // namespace bbrecog

#endif  // BBRECOG_SIMULATED_FIELD_HPP_
