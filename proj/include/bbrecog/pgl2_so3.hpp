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

#ifndef BBRECOG_PGL2_SO3_HPP_
#define BBRECOG_PGL2_SO3_HPP_

// Two-way isomorphism PGL2(K) <-> SO3_flat(K).
//
// Forward is the adjoint action on the trace-zero matrices written in the
// canonical basis E, W, F. The classical adjoint matrix
//
//   delta * [[a^2, 2ac, c^2], [ab, ad+bc, cd], [b^2, 2bd, d^2]],
//   delta = 1/(ad - bc),
//
// is the matrix of X -> A^-1 X A, which reverses products. Phi therefore
// evaluates it at the transpose of A, which keeps diagonal matrices fixed
// and makes Phi(AB) = Phi(A) Phi(B).
//
// Inverse extracts one square root from a corner entry. If the corner is not
// a square, every entry is first multiplied by a fixed non-square gamma, so
// that delta * gamma = eps^2 is a square; the recovered matrix is eps * A,
// the same point of PGL2. delta and eps are never computed.

#include <array>
#include <optional>
#include <utility>

#include "bbrecog/errors.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/matrix.hpp"

namespace bbrecog {

// Adjoint matrix of the displayed formula, without the transpose.
template <BlackBoxField K>
Mat3<ElementOf<K>> AdjointMatrix(const K& k, const Mat2<ElementOf<K>>& m) {
  const auto& a = m.a();
  const auto& b = m.b();
  const auto& c = m.c();
  const auto& d = m.d();
  ElementOf<K> det = Det(k, m);
  if (k.is_zero(det)) throw Error(ErrorCode::kSingular, "phi of singular A");
  ElementOf<K> delta = k.inv(det);
  ElementOf<K> two = k.add(k.one(), k.one());
  Mat3<ElementOf<K>> out{{
      k.mul(a, a), k.mul(two, k.mul(a, c)), k.mul(c, c),
      k.mul(a, b), k.add(k.mul(a, d), k.mul(b, c)), k.mul(c, d),
      k.mul(b, b), k.mul(two, k.mul(b, d)), k.mul(d, d),
  }};
  return ScalarMul(k, delta, out);
}

template <BlackBoxField K>
Mat3<ElementOf<K>> Phi(const K& k, const Mat2<ElementOf<K>>& a) {
  return AdjointMatrix(k, Transpose(a));
}

template <BlackBoxField K>
class Pgl2So3 {
 public:
  using E = ElementOf<K>;

  explicit Pgl2So3(const K& k, SqrtOptions sqrt_options = {})
      : k_(&k), sqrt_options_(sqrt_options) {}

  const K& field() const { return *k_; }

  Mat3<E> phi(const Mat2<E>& a) const { return Phi(*k_, a); }

  // Returns a representative of the preimage; phi(result) == b exactly.
  Mat2<E> phi_inv(const Mat3<E>& b, Rng& rng) const {
    const K& k = *k_;
    if (!k.eq(Det(k, b), k.one())) {
      throw Error(ErrorCode::kMalformedInput, "phi_inv input has det != 1");
    }
    // Corner pivots in order b11, b33, b13, b31.
    static constexpr std::array<std::pair<int, int>, 4> kPivots = {
        {{0, 0}, {2, 2}, {0, 2}, {2, 0}}};
    int which = -1;
    for (int i = 0; i < 4; ++i) {
      if (!k.is_zero(b(kPivots[i].first, kPivots[i].second))) {
        which = i;
        break;
      }
    }
    if (which < 0) {
      throw Error(ErrorCode::kMalformedInput, "all corner entries are zero");
    }
    const E& pivot = b(kPivots[which].first, kPivots[which].second);
    E gamma = k.one();
    if (!IsSquare(k, pivot, rng, sqrt_options_)) gamma = Nonsquare(rng);
    const Mat3<E> s = ScalarMul(k, gamma, b);
    const E two = k.add(k.one(), k.one());
    const E root_arg = s(kPivots[which].first, kPivots[which].second);
    auto root = Sqrt(k, root_arg, rng, sqrt_options_);
    if (!root) {
      throw Error(ErrorCode::kMalformedInput, "rescaled pivot is not a square");
    }
    // r = eps * R, where R is the matrix whose adjoint matrix is b.
    E ra, rb, rc, rd;
    switch (which) {
      case 0:  // b11 = a^2
        ra = *root;
        rb = Div(k, s(1, 0), ra);
        rc = Div(k, s(0, 1), k.mul(two, ra));
        rd = Div(k, Sub(k, s(1, 1), k.mul(rb, rc)), ra);
        break;
      case 1:  // b33 = d^2
        rd = *root;
        rb = Div(k, s(2, 1), k.mul(two, rd));
        rc = Div(k, s(1, 2), rd);
        ra = Div(k, Sub(k, s(1, 1), k.mul(rb, rc)), rd);
        break;
      case 2:  // b13 = c^2
        rc = *root;
        ra = Div(k, s(0, 1), k.mul(two, rc));
        rd = Div(k, s(1, 2), rc);
        rb = Div(k, Sub(k, s(1, 1), k.mul(ra, rd)), rc);
        break;
      default:  // b31 = b^2
        rb = *root;
        ra = Div(k, s(1, 0), rb);
        rd = Div(k, s(2, 1), k.mul(two, rb));
        rc = Div(k, Sub(k, s(1, 1), k.mul(ra, rd)), rb);
        break;
    }
    const Mat2<E> r{{ra, rb, rc, rd}};
    if (k.is_zero(Det(k, r))) {
      throw Error(ErrorCode::kMalformedInput, "reconstruction is singular");
    }
    Mat2<E> a = Transpose(r);
    if (!Equal(k, Phi(k, a), b)) {
      throw Error(ErrorCode::kMalformedInput,
                  "phi(phi_inv(B)) != B; input is not in SO3_flat");
    }
    return a;
  }

  // The non-square is drawn once per instance and reused.
  E Nonsquare(Rng& rng) const {
    if (!gamma_) gamma_ = FindNonsquare(*k_, rng, 64, sqrt_options_);
    return *gamma_;
  }

 private:
  const K* k_;
  SqrtOptions sqrt_options_;
  mutable std::optional<E> gamma_;
};

}  // namespace bbrecog

#endif  // BBRECOG_PGL2_SO3_HPP_
