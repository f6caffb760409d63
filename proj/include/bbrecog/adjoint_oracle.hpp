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

#ifndef BBRECOG_ADJOINT_ORACLE_HPP_
#define BBRECOG_ADJOINT_ORACLE_HPP_

// Whitebox stand-in for the adjoint-representation machinery that
// recognition consumes as input: the black box field K, a homomorphism from
// Omega3_sharp(K) onto Y/Z(Y), white tori S and R with preimages, and for
// PGL2-type boxes a two-way map X <-> SO3_sharp(K).
//
// None of this is computed the black-box way. The oracle reads the hidden
// encodings and fabricates the outputs that a genuine construction would
// guarantee, behind a hidden change of coordinates g in GL2(F_q) and its own
// spinor basis, so recognition has to rebuild everything from black-box
// data.

#include <cstdint>
#include <memory>
#include <optional>

#include "bbrecog/errors.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/forms.hpp"
#include "bbrecog/handles.hpp"
#include "bbrecog/keyed_permutation.hpp"
#include "bbrecog/matrix.hpp"
#include "bbrecog/pgl2_so3.hpp"
#include "bbrecog/plain_field.hpp"
#include "bbrecog/simulated_field.hpp"
#include "bbrecog/simulated_group.hpp"
#include "bbrecog/whitebox.hpp"

namespace bbrecog {

namespace oracle_detail {

inline PlainMat2 PlainMul(const PlainField& f, const PlainMat2& x,
                          const PlainMat2& y) {
  return Mul(f, x, y);
}

inline PlainMat2 PlainPow(const PlainField& f, PlainMat2 x, std::uint64_t n) {
  PlainMat2 r = Identity2(f);
  while (n) {
    if (n & 1) r = Mul(f, r, x);
    x = Mul(f, x, x);
    n >>= 1;
  }
  return r;
}

inline bool IsPlainIdentity(const PlainField& f, const PlainMat2& x) {
  return Equal(f, x, Identity2(f));
}

inline bool HasExactOrder(const PlainField& f, const PlainMat2& x,
                          std::uint64_t order) {
  if (!IsPlainIdentity(f, PlainPow(f, x, order))) return false;
  for (std::uint64_t r : PlainField::PrimeFactors(order)) {
    if (IsPlainIdentity(f, PlainPow(f, x, order / r))) return false;
  }
  return true;
}

// Generator of the split torus: diag(w, 1/w) with w primitive.
inline PlainMat2 SplitTorusGenerator(const PlainField& f) {
  std::uint64_t w = f.primitive_element();
  return {{w, 0, 0, f.inv(w)}};
}

// Generator of a nonsplit torus of order q + 1: multiplication by a norm-one
// element x + y sqrt(g) of F_{q^2} on the basis (1, sqrt(g)).
inline PlainMat2 NonsplitTorusGenerator(const PlainField& f) {
  std::uint64_t g = 2;
  while (f.is_square(g)) ++g;
  for (std::uint64_t u = 1; u < f.q(); ++u) {
    for (std::uint64_t v = 1; v < f.q(); ++v) {
      // (u - v sqrt g) / (u + v sqrt g)
      std::uint64_t norm = f.sub(f.mul(u, u), f.mul(g, f.mul(v, v)));
      std::uint64_t ninv = f.inv(norm);
      std::uint64_t x = f.mul(f.add(f.mul(u, u), f.mul(g, f.mul(v, v))), ninv);
      std::uint64_t y = f.mul(f.neg(f.mul(f.from_int(2), f.mul(u, v))), ninv);
      PlainMat2 m{{x, f.mul(g, y), y, x}};
      if (HasExactOrder(f, m, f.q() + 1)) return m;
    }
  }
  throw Error(ErrorCode::kExhausted, "no generator of the nonsplit torus");
}

// Plain coordinates shared by both bundles: a hidden conjugator and the
// oracle's own spinor basis.
class PlainChart {
 public:
  PlainChart(std::uint64_t q, std::uint64_t seed)
      : f_(std::make_shared<PlainField>(q)) {
    Rng rng(SplitMix64(seed ^ 0xc4a7));
    const PlainField& f = *f_;
    do {
      g_ = {{f.random(rng), f.random(rng), f.random(rng), f.random(rng)}};
    } while (Det(f, g_) == 0);
    g_inv_ = Inverse(f, g_);
    basis_ = std::make_shared<ChangeOfBasis<PlainField>>(
        ChangeOfBasis<PlainField>::Build(f, rng));
  }

  const PlainField& field() const { return *f_; }

  // Hidden coordinates -> oracle coordinates and back.
  PlainMat2 Untwist(const PlainMat2& b) const {
    return Mul(*f_, Mul(*f_, g_, b), g_inv_);
  }
  PlainMat2 Twist(const PlainMat2& a) const {
    return Mul(*f_, Mul(*f_, g_inv_, a), g_);
  }

  Mat3<std::uint64_t> ToSharp(const PlainMat2& a) const {
    return basis_->FlatToSharpUnchecked(Phi(*f_, a));
  }

  // Projective preimage of a sharp matrix, or nullopt outside SO3_sharp.
  std::optional<PlainMat2> FromSharp(const Mat3<std::uint64_t>& n) const {
    const PlainField& f = *f_;
    if (!InOSharp(f, n) || Det(f, n) != 1) return std::nullopt;
    Rng rng(0x5eed);
    Pgl2So3<PlainField> iso(f);
    return iso.phi_inv(basis_->SharpToFlatUnchecked(n), rng);
  }

  // Det-one representative of a PSL2 point, or nullopt outside PSL2.
  std::optional<PlainMat2> ToSl2(const PlainMat2& a) const {
    const PlainField& f = *f_;
    std::uint64_t d = Det(f, a);
    if (!f.is_square(d)) return std::nullopt;
    Rng rng(0x5eed);
    auto root = Sqrt(f, d, rng);
    return ScalarMul(f, f.inv(*root), a);
  }

 private:
  std::shared_ptr<PlainField> f_;
  PlainMat2 g_;
  PlainMat2 g_inv_;
  std::shared_ptr<ChangeOfBasis<PlainField>> basis_;
};

}  // namespace oracle_detail

// Oracle bundle for a box Y encrypting SL2(F_q) (or PSL2(F_q), where the
// center is trivial and Y/Z(Y) = Y).
class AdjointBundle {
 public:
  using FieldType = SimulatedField;
  using GroupType = SimulatedGroup;
  using FE = FieldHandle;
  using GE = GroupHandle;

  static AdjointBundle Build(const SimulatedGroup& y) {
    if (y.flavor() == Flavor::kPgl2) {
      throw Error(ErrorCode::kConfig,
                  "adjoint bundle needs an SL2 or PSL2 black box");
    }
    return AdjointBundle(y);
  }

  const SimulatedField& field() const { return *k_; }
  const SimulatedGroup& group() const { return *y_; }

  // Omega3_sharp(K) -> Y/Z(Y); returns one element of the center coset.
  GE forward(const Mat3<FE>& n) const {
    WhiteboxScope scope(WhiteboxCapability{});
    const auto a = chart_.FromSharp(Reveal(n));
    if (!a) throw Error(ErrorCode::kDomain, "forward input not in SO3_sharp");
    const auto s = chart_.ToSl2(*a);
    if (!s) throw Error(ErrorCode::kDomain, "forward input not in Omega3");
    return ConcealCoset(chart_.Twist(*s));
  }

  GE torus_generator(TorusId id) const {
    WhiteboxScope scope(WhiteboxCapability{});
    return y_->Conceal(chart_.Twist(Generator(id)));
  }

  // Membership in the torus, modulo the center.
  bool torus_contains(TorusId id, const GE& x) const {
    WhiteboxScope scope(WhiteboxCapability{});
    const PlainField& f = chart_.field();
    const PlainMat2 a = chart_.Untwist(y_->Reveal(x));
    const PlainMat2& t = Generator(id);
    return Equal(f, Mul(f, a, t), Mul(f, t, a));
  }

  // Matrix in Omega3_sharp(K) that forward() sends to x's center coset.
  Mat3<FE> torus_preimage(TorusId id, const GE& x) const {
    if (!torus_contains(id, x)) {
      throw Error(ErrorCode::kNotInNormalizer,
                  std::string("element not in torus ") + TorusName(id));
    }
    WhiteboxScope scope(WhiteboxCapability{});
    return Conceal(chart_.ToSharp(chart_.Untwist(y_->Reveal(x))));
  }

  // Order of the torus in Y.
  std::uint64_t torus_order(TorusId id) const {
    return id == TorusId::kS ? s_order_ : r_order_;
  }

 private:
  explicit AdjointBundle(const SimulatedGroup& y)
      : y_(&y), chart_(Q(y), Seed(y)) {
    const std::uint64_t q = Q(y);
    k_ = std::make_shared<SimulatedField>(q, SplitMix64(y.seed() ^ 0xf1e7d),
                                          y.exponent_mode());
    const PlainField& f = chart_.field();
    PlainMat2 split = oracle_detail::SplitTorusGenerator(f);
    PlainMat2 nonsplit = oracle_detail::NonsplitTorusGenerator(f);
    if (q % 4 == 3) {
      s_gen_ = split;
      s_order_ = q - 1;
      r_gen_ = nonsplit;
      r_order_ = q + 1;
    } else {
      s_gen_ = nonsplit;
      s_order_ = q + 1;
      r_gen_ = split;
      r_order_ = q - 1;
    }
  }

  static std::uint64_t Q(const SimulatedGroup& y) {
    WhiteboxScope scope(WhiteboxCapability{});
    return y.Plain().q();
  }
  static std::uint64_t Seed(const SimulatedGroup& y) {
    return SplitMix64(y.seed() ^ 0xad701);
  }

  const PlainMat2& Generator(TorusId id) const {
    return id == TorusId::kS ? s_gen_ : r_gen_;
  }

  Mat3<std::uint64_t> Reveal(const Mat3<FE>& n) const {
    Mat3<std::uint64_t> out;
    for (std::size_t i = 0; i < 9; ++i) out.e[i] = k_->Reveal(n.e[i]);
    return out;
  }

  Mat3<FE> Conceal(const Mat3<std::uint64_t>& n) const {
    Mat3<FE> out;
    for (std::size_t i = 0; i < 9; ++i) out.e[i] = k_->Conceal(n.e[i]);
    return out;
  }

  // Picks one of b, -b by a keyed hash of the pair, so the representative
  // carries no usable sign information.
  GE ConcealCoset(const PlainMat2& b) const {
    GE h1 = y_->Conceal(b);
    if (y_->flavor() != Flavor::kSl2) return h1;
    GE h2 = y_->Conceal(Negate(chart_.field(), b));
    std::uint64_t key = SplitMix64(y_->seed() ^ 0x51a9);
    return SplitMix64(h1.lo ^ key) < SplitMix64(h2.lo ^ key) ? h1 : h2;
  }

  const SimulatedGroup* y_;
  oracle_detail::PlainChart chart_;
  std::shared_ptr<SimulatedField> k_;
  PlainMat2 s_gen_;
  PlainMat2 r_gen_;
  std::uint64_t s_order_ = 0;
  std::uint64_t r_order_ = 0;
};

// Two-way maps for a box X encrypting PGL2(F_q).
class PglAdjointBundle {
 public:
  using FieldType = SimulatedField;
  using GroupType = SimulatedGroup;
  using FE = FieldHandle;
  using GE = GroupHandle;

  static PglAdjointBundle Build(const SimulatedGroup& x) {
    if (x.flavor() != Flavor::kPgl2) {
      throw Error(ErrorCode::kConfig, "PGL2 adjoint bundle needs a PGL2 box");
    }
    return PglAdjointBundle(x);
  }

  const SimulatedField& field() const { return *k_; }
  const SimulatedGroup& group() const { return *x_; }

  Mat3<FE> to_sharp(const GE& x) const {
    WhiteboxScope scope(WhiteboxCapability{});
    const auto n = chart_.ToSharp(chart_.Untwist(x_->Reveal(x)));
    Mat3<FE> out;
    for (std::size_t i = 0; i < 9; ++i) out.e[i] = k_->Conceal(n.e[i]);
    return out;
  }

  GE from_sharp(const Mat3<FE>& n) const {
    WhiteboxScope scope(WhiteboxCapability{});
    Mat3<std::uint64_t> plain;
    for (std::size_t i = 0; i < 9; ++i) plain.e[i] = k_->Reveal(n.e[i]);
    const auto a = chart_.FromSharp(plain);
    if (!a) {
      throw Error(ErrorCode::kDomain, "from_sharp input not in SO3_sharp");
    }
    return x_->Conceal(chart_.Twist(*a));
  }

 private:
  explicit PglAdjointBundle(const SimulatedGroup& x)
      : x_(&x), chart_(Q(x), SplitMix64(x.seed() ^ 0xad702)) {
    k_ = std::make_shared<SimulatedField>(
        Q(x), SplitMix64(x.seed() ^ 0xf1e7e), x.exponent_mode());
  }

  static std::uint64_t Q(const SimulatedGroup& x) {
    WhiteboxScope scope(WhiteboxCapability{});
    return x.Plain().q();
  }

  const SimulatedGroup* x_;
  oracle_detail::PlainChart chart_;
  std::shared_ptr<SimulatedField> k_;
};

}  // namespace bbrecog

#endif  // BBRECOG_ADJOINT_ORACLE_HPP_
