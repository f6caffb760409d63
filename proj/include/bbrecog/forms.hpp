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

#ifndef BBRECOG_FORMS_HPP_
#define BBRECOG_FORMS_HPP_

// Ternary orthogonal groups in two coordinate systems.
//
// The flat coordinates use a canonical basis (e, w, f), whose Gram matrix is
// J = [[0,0,1],[0,-2,0],[1,0,0]]; the sharp coordinates use a spinor basis
// whose Gram matrix is scalar. Membership tests are MᵗJM = J and MᵗM = I
// respectively. ChangeOfBasis converts between the two.

#include <array>

#include "bbrecog/errors.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/matrix.hpp"

namespace bbrecog {

template <BlackBoxField K>
Mat3<ElementOf<K>> FormJ(const K& k) {
  Mat3<ElementOf<K>> j;
  j.e.fill(k.zero());
  j(0, 2) = k.one();
  j(2, 0) = k.one();
  j(1, 1) = FromInt(k, -2);
  return j;
}

template <BlackBoxField K>
bool InOSharp(const K& k, const Mat3<ElementOf<K>>& m) {
  return Equal(k, Mul(k, Transpose(m), m), Identity3(k));
}

template <BlackBoxField K>
bool InOFlat(const K& k, const Mat3<ElementOf<K>>& m) {
  const auto j = FormJ(k);
  return Equal(k, Mul(k, Mul(k, Transpose(m), j), m), j);
}

// beta(U, V) = -Tr(UV) on trace-zero 2x2 matrices.
template <BlackBoxField K>
ElementOf<K> TraceForm(const K& k, const Mat2<ElementOf<K>>& u,
                       const Mat2<ElementOf<K>>& v) {
  return k.neg(Trace(k, Mul(k, u, v)));
}

template <class E>
struct MatrixTriple {
  Mat2<E> first;
  Mat2<E> second;
  Mat2<E> third;
};

// E, W, F: a canonical basis of sl_2 under beta.
template <BlackBoxField K>
MatrixTriple<ElementOf<K>> CanonicalTriple(const K& k) {
  const auto o = k.one(), z = k.zero(), m = k.neg(k.one());
  return {{{z, z, m, z}}, {{o, z, z, m}}, {{z, o, z, z}}};
}

// V1, V2, V3: the spinor basis built from a^2 + b^2 = -1. They generate a
// quaternion group: Vi^2 = -I, V1V2 = V3, V2V3 = V1, V3V1 = V2.
template <BlackBoxField K>
MatrixTriple<ElementOf<K>> SpinorTriple(const K& k, const ElementOf<K>& a,
                                        const ElementOf<K>& b) {
  const auto o = k.one(), z = k.zero();
  return {{{z, o, k.neg(o), z}},
          {{a, b, b, k.neg(a)}},
          {{b, k.neg(a), k.neg(a), k.neg(b)}}};
}

// Rows of P are the coordinates of the spinor vectors v1 = e + f,
// v2 = -b e + a w + b f, v3 = a e + b w - a f, so P J Pᵗ = 2I.
template <BlackBoxField K>
class ChangeOfBasis {
 public:
  using E = ElementOf<K>;
  using M3 = Mat3<E>;

  // How a flat-coordinate matrix is carried to sharp coordinates; chosen by
  // a membership self-check at construction.
  enum class Orientation { kTransposeConjugate, kDirectConjugate };

  ChangeOfBasis(const K& k, const E& a, const E& b) : k_(&k), a_(a), b_(b) {
    if (!k.eq(k.add(k.mul(a, a), k.mul(b, b)), k.neg(k.one()))) {
      throw Error(ErrorCode::kDomain, "a^2 + b^2 != -1");
    }
    const E o = k.one(), z = k.zero();
    p_ = M3{{o, z, o, k.neg(b), a, b, a, b, k.neg(a)}};
    const M3 gram = Mul(k, Mul(k, p_, FormJ(k)), Transpose(p_));
    if (!Equal(k, gram, ScalarMul(k, FromInt(k, 2), Identity3(k)))) {
      throw Error(ErrorCode::kDomain, "P J Pᵗ != 2I");
    }
    p_inv_ = Inverse(k, p_);
    SelectOrientation();
  }

  static ChangeOfBasis Build(const K& k, Rng& rng) {
    auto [a, b] = TwoSquaresMinusOne(k, rng);
    return ChangeOfBasis(k, a, b);
  }

  const E& a() const { return a_; }
  const E& b() const { return b_; }
  const M3& P() const { return p_; }
  Orientation orientation() const { return orientation_; }

  M3 FlatToSharp(const M3& m) const {
    if (!InOFlat(*k_, m)) {
      throw Error(ErrorCode::kDomain, "flat_to_sharp input not in O_flat");
    }
    return FlatToSharpUnchecked(m);
  }

  M3 SharpToFlat(const M3& m) const {
    if (!InOSharp(*k_, m)) {
      throw Error(ErrorCode::kDomain, "sharp_to_flat input not in O_sharp");
    }
    return SharpToFlatUnchecked(m);
  }

  M3 FlatToSharpUnchecked(const M3& m) const {
    const K& k = *k_;
    if (orientation_ == Orientation::kTransposeConjugate) {
      return Mul(k, Mul(k, Transpose(p_inv_), m), Transpose(p_));
    }
    return Mul(k, Mul(k, p_, m), p_inv_);
  }

  M3 SharpToFlatUnchecked(const M3& m) const {
    const K& k = *k_;
    if (orientation_ == Orientation::kTransposeConjugate) {
      return Mul(k, Mul(k, Transpose(p_), m), Transpose(p_inv_));
    }
    return Mul(k, Mul(k, p_inv_, m), p_);
  }

 private:
  // Witnesses: the adjoint images of the two standard transvections.
  void SelectOrientation() {
    const K& k = *k_;
    const E o = k.one(), z = k.zero(), two = FromInt(k, 2);
    const std::array<M3, 2> witnesses = {M3{{o, z, z, o, o, z, o, two, o}},
                                         M3{{o, two, o, z, o, o, z, z, o}}};
    for (auto candidate : {Orientation::kTransposeConjugate,
                           Orientation::kDirectConjugate}) {
      orientation_ = candidate;
      bool ok = true;
      for (const auto& w : witnesses) {
        if (!InOFlat(k, w) || !InOSharp(k, FlatToSharpUnchecked(w))) {
          ok = false;
          break;
        }
      }
      if (ok) return;
    }
    throw Error(ErrorCode::kDomain, "no conjugation orientation verifies");
  }

  const K* k_;
  E a_;
  E b_;
  M3 p_;
  M3 p_inv_;
  Orientation orientation_ = Orientation::kTransposeConjugate;
};

}  // namespace bbrecog

#endif  // BBRECOG_FORMS_HPP_
