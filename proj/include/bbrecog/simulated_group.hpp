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

#ifndef BBRECOG_SIMULATED_GROUP_HPP_
#define BBRECOG_SIMULATED_GROUP_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"
#include "bbrecog/group.hpp"
#include "bbrecog/handles.hpp"
#include "bbrecog/keyed_permutation.hpp"
#include "bbrecog/matrix.hpp"
#include "bbrecog/plain_field.hpp"
#include "bbrecog/simulated_field.hpp"
#include "bbrecog/whitebox.hpp"

namespace bbrecog {

enum class Flavor { kSl2, kPsl2, kPgl2 };

inline const char* FlavorName(Flavor f) {
  switch (f) {
    case Flavor::kSl2: return "sl2";
    case Flavor::kPsl2: return "psl2";
    case Flavor::kPgl2: return "pgl2";
  }
  return "unknown";
}

inline Flavor ParseFlavor(std::string_view name) {
  if (name == "sl2") return Flavor::kSl2;
  if (name == "psl2") return Flavor::kPsl2;
  if (name == "pgl2") return Flavor::kPgl2;
  throw Error(ErrorCode::kConfig, "unknown flavor: " + std::string(name));
}

using PlainMat2 = Mat2<std::uint64_t>;

struct GroupTally {
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t total() const { return mul + inv; }
};

// Uniform random element of SL2 over a plain field.
inline PlainMat2 RandomPlainSl2(const PlainField& f, Rng& rng) {
  for (;;) {
    std::uint64_t a = f.random(rng), b = f.random(rng);
    if (a == 0 && b == 0) continue;
    std::uint64_t t = f.random(rng);
    if (a != 0) {
      // c = t, d = (1 + b t) / a
      return {{a, b, t, f.mul(f.add(f.one(), f.mul(b, t)), f.inv(a))}};
    }
    // a = 0: -b c = 1
    return {{a, b, f.neg(f.inv(b)), t}};
  }
}

// A black box group encrypting SL2(F_q), PSL2(F_q) or PGL2(F_q). Elements
// are canonical matrix representatives (sign fixed for PSL2, first nonzero
// entry scaled to 1 for PGL2) packed base q into 128 bits and passed
// through a keyed permutation.
class SimulatedGroup {
 public:
  using Element = GroupHandle;

  static constexpr std::uint64_t kMinFieldOrder = 7;

  SimulatedGroup(std::uint64_t q, Flavor flavor, std::uint64_t seed,
                 ExponentMode mode = ExponentMode::kExact)
      : plain_(q),
        flavor_(flavor),
        seed_(seed),
        mode_(mode),
        perm_(DeriveKeys<Feistel128::kRounds>(seed, 0x9a0c)) {
    if (q < kMinFieldOrder) {
      throw Error(ErrorCode::kConfig,
                  "fields with fewer than 7 elements are not supported, "
                  "got q = " + std::to_string(q));
    }
    const Exponent p = plain_.characteristic();
    exponent_ = p * (Exponent{q} * q - 1);
    if (mode == ExponentMode::kMultiple) {
      auto keys = DeriveKeys<2>(seed, 0x9e4a);
      Exponent odd = 3 + 2 * (keys[0] % 8);
      unsigned extra = 1 + static_cast<unsigned>(keys[1] % 3);
      exponent_ = exponent_ * odd << extra;
    }
    identity_ = Encode({{1, 0, 0, 1}});
  }

  Flavor flavor() const { return flavor_; }
  std::uint64_t seed() const { return seed_; }
  ExponentMode exponent_mode() const { return mode_; }
  std::size_t handle_width() const { return GroupHandle::kWidth; }
  Exponent exponent() const { return exponent_; }

  Element identity() const { return identity_; }

  Element mul(const Element& x, const Element& y) const {
    tally_mul_.Bump();
    return Encode(PlainMul(Decode(x), Decode(y)));
  }

  Element inv(const Element& x) const {
    tally_inv_.Bump();
    return Encode(PlainInverse(Decode(x)));
  }

  bool eq(const Element& x, const Element& y) const { return x == y; }

  Element random(Rng& rng) const {
    const PlainField& f = plain_;
    if (flavor_ != Flavor::kPgl2) return Encode(RandomPlainSl2(f, rng));
    for (;;) {
      PlainMat2 m{{f.random(rng), f.random(rng), f.random(rng), f.random(rng)}};
      if (PlainDet(m) != 0) return Encode(m);
    }
  }

  bool is_valid(const Element& x) const {
    try {
      Decode(x);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  GroupTally tally() const { return {tally_mul_.value(), tally_inv_.value()}; }
  void reset_tally() const {
    tally_mul_.Reset();
    tally_inv_.Reset();
  }

  // Whitebox access; each call requires an open WhiteboxScope.
  PlainMat2 Reveal(const Element& x) const {
    RequireWhitebox("SimulatedGroup::Reveal");
    return Decode(x);
  }
  // Accepts any representative; it is canonicalized first.
  Element Conceal(const PlainMat2& m) const {
    RequireWhitebox("SimulatedGroup::Conceal");
    for (auto v : m.e) {
      if (!plain_.is_valid(v)) throw Error(ErrorCode::kDomain, "entry >= q");
    }
    std::uint64_t det = PlainDet(m);
    if (det == 0 || (flavor_ != Flavor::kPgl2 && det != 1)) {
      throw Error(ErrorCode::kDomain, "matrix not in the encrypted group");
    }
    return Encode(m);
  }
  const PlainField& Plain() const {
    RequireWhitebox("SimulatedGroup::Plain");
    return plain_;
  }

 private:
  std::uint64_t PlainDet(const PlainMat2& m) const {
    return plain_.sub(plain_.mul(m.a(), m.d()), plain_.mul(m.b(), m.c()));
  }

  PlainMat2 PlainMul(const PlainMat2& x, const PlainMat2& y) const {
    const PlainField& f = plain_;
    return {{f.add(f.mul(x.a(), y.a()), f.mul(x.b(), y.c())),
             f.add(f.mul(x.a(), y.b()), f.mul(x.b(), y.d())),
             f.add(f.mul(x.c(), y.a()), f.mul(x.d(), y.c())),
             f.add(f.mul(x.c(), y.b()), f.mul(x.d(), y.d()))}};
  }

  // Adjugate; a scalar multiple of the inverse, exact for det 1.
  PlainMat2 PlainInverse(const PlainMat2& x) const {
    const PlainField& f = plain_;
    return {{x.d(), f.neg(x.b()), f.neg(x.c()), x.a()}};
  }

  PlainMat2 Canonical(PlainMat2 m) const {
    const PlainField& f = plain_;
    std::size_t i = 0;
    while (i < 4 && m.e[i] == 0) ++i;
    if (i == 4) throw Error(ErrorCode::kDomain, "zero matrix");
    if (flavor_ == Flavor::kPsl2) {
      if (f.neg(m.e[i]) < m.e[i]) {
        for (auto& v : m.e) v = f.neg(v);
      }
    } else if (flavor_ == Flavor::kPgl2) {
      std::uint64_t s = f.inv(m.e[i]);
      for (auto& v : m.e) v = f.mul(s, v);
    }
    return m;
  }

  Element Encode(const PlainMat2& raw) const {
    const PlainMat2 m = Canonical(raw);
    const Exponent q = plain_.q();
    Exponent packed = 0;
    for (auto v : m.e) packed = packed * q + v;
    auto [hi, lo] = perm_.Forward({static_cast<std::uint64_t>(packed >> 64),
                                   static_cast<std::uint64_t>(packed)});
    return Element{hi, lo};
  }

  PlainMat2 Decode(const Element& x) const {
    auto [hi, lo] = perm_.Backward({x.hi, x.lo});
    Exponent packed = (Exponent{hi} << 64) | lo;
    const Exponent q = plain_.q();
    PlainMat2 m;
    for (std::size_t i = 4; i-- > 0;) {
      m.e[i] = static_cast<std::uint64_t>(packed % q);
      packed /= q;
    }
    std::uint64_t det = PlainDet(m);
    bool member = packed == 0 && det != 0 &&
                  (flavor_ == Flavor::kPgl2 || det == 1);
    if (!member || !Equal(plain_, Canonical(m), m)) {
      throw Error(ErrorCode::kInvalidHandle,
                  "handle " + x.ToHex() + " is not a group element");
    }
    return m;
  }

  PlainField plain_;
  Flavor flavor_;
  std::uint64_t seed_;
  ExponentMode mode_;
  Feistel128 perm_;
  Exponent exponent_ = 0;
  Element identity_;
  OpCounter tally_mul_;
  OpCounter tally_inv_;
};

static_assert(BlackBoxGroup<SimulatedGroup>);
static_assert(BlackBoxGroup<CenterQuotient<SimulatedGroup>>);

}  // namespace bbrecog

#endif  // BBRECOG_SIMULATED_GROUP_HPP_
