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

#ifndef BBRECOG_RECOGNITION_HPP_
#define BBRECOG_RECOGNITION_HPP_

// Constructive recognition of black boxes encrypting SL2, PSL2 and PGL2 over
// fields of odd characteristic.
//
// Given the adjoint bundle (black box field K, Omega3_sharp(K) -> Y/Z(Y),
// white tori S and R), Recognizer builds
//
//   psi_bar : SL2(K) -> Y/Z(Y)   phi, change of basis, bundle forward map
//   psi     : SL2(K) -> Y        lift of psi_bar through odd-order
//                                transvection images
//   theta   : Y -> SL2(K)        white-element closure, then the center
//                                coset is resolved by psi
//
// Only black-box operations and the bundle interface are used; this header
// has no whitebox access.

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bbrecog/errors.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/forms.hpp"
#include "bbrecog/group.hpp"
#include "bbrecog/matrix.hpp"
#include "bbrecog/pgl2_so3.hpp"

namespace bbrecog {

template <class B>
concept AdjointOracle =
    BlackBoxField<typename B::FieldType> &&
    BlackBoxGroup<typename B::GroupType> &&
    requires(const B& b, const Mat3<typename B::FieldType::Element>& n,
             const typename B::GroupType::Element& y, TorusId id) {
      { b.field() } -> std::same_as<const typename B::FieldType&>;
      { b.group() } -> std::same_as<const typename B::GroupType&>;
      { b.forward(n) } -> std::same_as<typename B::GroupType::Element>;
      { b.torus_generator(id) } -> std::same_as<typename B::GroupType::Element>;
      { b.torus_contains(id, y) } -> std::same_as<bool>;
      {
        b.torus_preimage(id, y)
      } -> std::same_as<Mat3<typename B::FieldType::Element>>;
    };

template <class B>
concept PglAdjointOracle =
    BlackBoxField<typename B::FieldType> &&
    BlackBoxGroup<typename B::GroupType> &&
    requires(const B& b, const Mat3<typename B::FieldType::Element>& n,
             const typename B::GroupType::Element& x) {
      { b.field() } -> std::same_as<const typename B::FieldType&>;
      { b.group() } -> std::same_as<const typename B::GroupType&>;
      { b.from_sharp(n) } -> std::same_as<typename B::GroupType::Element>;
      { b.to_sharp(x) } -> std::same_as<Mat3<typename B::FieldType::Element>>;
    };

// x = x1 ... xk with unit triangular factors: three when c != 0 or b != 0,
// four when x is diagonal, none for the identity.
template <BlackBoxField K>
std::vector<Mat2<ElementOf<K>>> TransvectionDecompose(
    const K& k, const Mat2<ElementOf<K>>& x) {
  using E = ElementOf<K>;
  if (!k.eq(Det(k, x), k.one())) {
    throw Error(ErrorCode::kDomain, "transvection_decompose needs det 1");
  }
  const E o = k.one(), z = k.zero();
  auto upper = [&](E t) { return Mat2<E>{{o, t, z, o}}; };
  auto lower = [&](E t) { return Mat2<E>{{o, z, t, o}}; };
  const E& a = x.a();
  const E& b = x.b();
  const E& c = x.c();
  const E& d = x.d();
  if (!k.is_zero(c)) {
    E ci = k.inv(c);
    return {upper(k.mul(Sub(k, a, o), ci)), lower(c),
            upper(k.mul(Sub(k, d, o), ci))};
  }
  if (!k.is_zero(b)) {
    E bi = k.inv(b);
    return {lower(k.mul(Sub(k, d, o), bi)), upper(b),
            lower(k.mul(Sub(k, a, o), bi))};
  }
  if (k.eq(a, o)) return {};
  E ai = k.inv(a);
  return {lower(Sub(k, ai, o)), upper(o), lower(Sub(k, a, o)),
          upper(k.neg(ai))};
}

// Uniform element of SL2(K) from black-box field randomness.
template <BlackBoxField K>
Mat2<ElementOf<K>> RandomSl2(const K& k, Rng& rng) {
  for (;;) {
    ElementOf<K> a = k.random(rng), b = k.random(rng);
    if (k.is_zero(a) && k.is_zero(b)) continue;
    ElementOf<K> t = k.random(rng);
    if (!k.is_zero(a)) {
      return {{a, b, t, Div(k, k.add(k.one(), k.mul(b, t)), a)}};
    }
    return {{a, b, k.neg(k.inv(b)), t}};
  }
}

template <BlackBoxField K>
Mat2<ElementOf<K>> RandomGl2(const K& k, Rng& rng) {
  for (;;) {
    Mat2<ElementOf<K>> m{{k.random(rng), k.random(rng), k.random(rng),
                          k.random(rng)}};
    if (!k.is_zero(Det(k, m))) return m;
  }
}

// Scales x to determinant one, or nullopt when det(x) is zero or not a
// square. Scalars only change det by squares, so a non-square determinant
// means x is outside PSL2(K).
template <BlackBoxField K>
std::optional<Mat2<ElementOf<K>>> NormalizeDet(const K& k,
                                               const Mat2<ElementOf<K>>& x,
                                               Rng& rng,
                                               const SqrtOptions& opts = {}) {
  ElementOf<K> d = Det(k, x);
  if (k.is_zero(d)) return std::nullopt;
  auto root = Sqrt(k, d, rng, opts);
  if (!root) return std::nullopt;
  return ScalarMul(k, k.inv(*root), x);
}

struct RecognitionOptions {
  // Random white involutions tried per whiten_involution call.
  int whiten_retries = 64;
  // Fresh involution triples tried per theta_bar call.
  int theta_retries = 32;
  // Random combinations tried when a solution space must yield an
  // invertible matrix with square determinant.
  int combination_retries = 64;
  InvolutionSearch center_search;
  SqrtOptions sqrt;
};

struct RecognitionStats {
  std::uint64_t psi_bar_calls = 0;
  std::uint64_t whitened_involutions = 0;
  std::uint64_t whiten_draws = 0;
  std::uint64_t theta_bar_calls = 0;
  std::uint64_t theta_resamples = 0;
};

template <AdjointOracle B>
class Recognizer {
 public:
  using K = typename B::FieldType;
  using G = typename B::GroupType;
  using FE = ElementOf<K>;
  using GE = GroupElementOf<G>;
  using M2 = Mat2<FE>;
  using M3 = Mat3<FE>;

  // with_center: Y encrypts SL2 and the central involution must be found;
  // otherwise Y is centerless (PSL2).
  Recognizer(const B& bundle, bool with_center, std::uint64_t seed,
             RecognitionOptions opts = {})
      : bundle_(&bundle),
        opts_(opts),
        rng_(seed),
        view_(bundle.group()),
        basis_(ChangeOfBasis<K>::Build(bundle.field(), rng_)),
        iso_(bundle.field(), opts.sqrt) {
    if (with_center) {
      auto z = FindCentralInvolution(group(), rng_, opts_.center_search);
      if (!z) {
        throw Error(ErrorCode::kConfig,
                    "no central involution: the box does not encrypt SL2");
      }
      view_ = CenterQuotient<G>(group(), *z);
    } else if (FindCentralInvolution(group(), rng_, opts_.center_search)) {
      throw Error(ErrorCode::kConfig,
                  "central involution found: the box does not encrypt PSL2");
    }
    for (TorusId id : {TorusId::kS, TorusId::kR}) SetUpTorus(id);
    auto r = ExtractInvolution(view_, tori_[1].generator);
    if (!r) {
      throw Error(ErrorCode::kMalformedInput,
                  "torus R has odd order modulo the center");
    }
    r_involution_ = *r;
    r_matrix_ = TorusMatrix(TorusId::kR, *r);
  }

  const B& bundle() const { return *bundle_; }
  const K& field() const { return bundle_->field(); }
  const G& group() const { return bundle_->group(); }
  const CenterQuotient<G>& quotient() const { return view_; }
  const std::optional<GE>& center() const { return view_.center(); }
  const ChangeOfBasis<K>& change_of_basis() const { return basis_; }
  const Pgl2So3<K>& iso() const { return iso_; }
  const RecognitionStats& stats() const { return stats_; }
  Rng& rng() { return rng_; }

  // SL2(K) -> Y/Z(Y); the result is one element of the image coset.
  GE psi_bar(const M2& x) {
    ++stats_.psi_bar_calls;
    return bundle_->forward(basis_.FlatToSharp(iso_.phi(x)));
  }

  // The unique lift of psi_bar to a homomorphism SL2(K) -> Y.
  GE psi(const M2& x) {
    const auto& z = RequireCenter();
    const G& g = group();
    GE result = g.identity();
    for (const M2& factor : TransvectionDecompose(field(), x)) {
      GE y = psi_bar(factor);
      if (!IsOddOrder(g, y)) {
        y = g.mul(y, z);
        if (!IsOddOrder(g, y)) {
          throw Error(ErrorCode::kLift,
                      "no odd-order element over a transvection");
        }
      }
      result = g.mul(result, y);
    }
    return result;
  }

  // Det-one matrix of a torus element, from the bundle's sharp preimage.
  M2 TorusMatrix(TorusId id, const GE& y) {
    M2 a = iso_.phi_inv(basis_.SharpToFlat(bundle_->torus_preimage(id, y)),
                        rng_);
    auto s = NormalizeDet(field(), a, rng_, opts_.sqrt);
    if (!s) {
      throw Error(ErrorCode::kMalformedInput,
                  "torus preimage is outside PSL2(K)");
    }
    return *s;
  }

  // Matrix of an element normalizing the torus image. Torus elements are
  // white; any other y is u (u y) with u the inverting involution.
  M2 whiten_normalizer(TorusId id, const GE& y) {
    if (bundle_->torus_contains(id, y)) return TorusMatrix(id, y);
    const TorusState& t = tori_[Index(id)];
    GE uy = view_.mul(t.inverter, y);
    if (!bundle_->torus_contains(id, uy)) {
      throw Error(ErrorCode::kNotInNormalizer,
                  "element does not normalize the white torus");
    }
    return Mul(field(), Inverse(field(), t.inverter_matrix),
               TorusMatrix(id, uy));
  }

  // Matrix of y, given that y commutes with the white involution a whose
  // matrix is alpha: conjugate a onto the torus involution of R, whiten in
  // N(R) = C(r), and conjugate back.
  M2 whiten_centralizer(const GE& a, const M2& alpha, const GE& y) {
    if (view_.eq(a, y)) return alpha;
    const K& k = field();
    const M2 g = Conjugator(r_matrix_, alpha);
    const GE h = psi_bar(g);
    const GE moved = view_.mul(h, view_.mul(y, view_.inv(h)));
    const M2 inner = whiten_normalizer(TorusId::kR, moved);
    return Mul(k, Mul(k, Inverse(k, g), inner), g);
  }

  // Matrix of an involution of Y/Z(Y).
  M2 whiten_involution(const GE& t) {
    const GE key = CacheKey(t);
    if (auto it = white_.find(key); it != white_.end()) return it->second;
    for (int attempt = 0; attempt < opts_.whiten_retries; ++attempt) {
      ++stats_.whiten_draws;
      auto [a, alpha] = RandomWhiteInvolution();
      if (view_.eq(a, t)) return Remember(key, alpha);
      auto w = ExtractInvolution(view_, view_.mul(a, t));
      if (!w) continue;
      const M2 w_matrix = whiten_centralizer(a, alpha, *w);
      return Remember(key, whiten_centralizer(*w, w_matrix, t));
    }
    throw Error(ErrorCode::kExhausted, "involution could not be whitened");
  }

  // An involution psi_bar(alpha) together with alpha, for a random
  // conjugate alpha of the torus involution.
  std::pair<GE, M2> RandomWhiteInvolution() {
    const K& k = field();
    const M2 g = RandomSl2(k, rng_);
    const M2 alpha = Mul(k, Mul(k, Inverse(k, g), r_matrix_), g);
    return {psi_bar(alpha), alpha};
  }

  // Det-one X with psi_bar(X) = y modulo the center. Conjugation by X carries
  // three white involutions t_i onto the whitened t_i^y, which pins X down
  // to a scalar; the signs of the whitened matrices are unknown, so all
  // sign patterns are tried and the candidate is verified.
  M2 theta_bar(const GE& y) {
    ++stats_.theta_bar_calls;
    const K& k = field();
    if (IsIdentity(view_, y)) return Identity2(k);
    for (int attempt = 0; attempt < opts_.theta_retries; ++attempt) {
      std::array<M2, 3> before;
      std::array<M2, 3> after;
      for (std::size_t i = 0; i < 3; ++i) {
        auto [t, tm] = RandomWhiteInvolution();
        before[i] = tm;
        after[i] = whiten_involution(Conjugate(view_, t, y));
      }
      for (unsigned signs = 0; signs < 8; ++signs) {
        std::vector<std::vector<FE>> rows;
        for (std::size_t i = 0; i < 3; ++i) {
          const M2 right = (signs >> i) & 1 ? Negate(k, after[i]) : after[i];
          for (auto& row : CommutationRows(k, before[i], right)) {
            rows.push_back(std::move(row));
          }
        }
        auto solution = SolveLinear(k, std::move(rows));
        if (solution.basis.size() != 1) continue;
        auto x = NormalizeDet(k, Mat2FromVector(solution.basis[0]), rng_,
                              opts_.sqrt);
        if (x && view_.eq(psi_bar(*x), y)) return *x;
      }
      ++stats_.theta_resamples;
    }
    throw Error(ErrorCode::kExhausted, "theta_bar found no preimage");
  }

  // Inverse of psi: picks the element of the center coset {U, -U} whose
  // psi image is exactly y.
  M2 theta(const GE& y) {
    const auto& z = RequireCenter();
    const G& g = group();
    const M2 u = theta_bar(y);
    const GE image = psi(u);
    if (g.eq(image, y)) return u;
    if (g.eq(g.mul(image, z), y)) return Negate(field(), u);
    throw Error(ErrorCode::kLift, "neither U nor -U maps to y");
  }

  const GE& torus_generator(TorusId id) const {
    return tori_[Index(id)].generator;
  }
  const M2& inverting_matrix(TorusId id) const {
    return tori_[Index(id)].inverter_matrix;
  }
  const GE& inverting_involution(TorusId id) const {
    return tori_[Index(id)].inverter;
  }
  const GE& torus_involution() const { return r_involution_; }
  const M2& torus_involution_matrix() const { return r_matrix_; }

  // Whitened involutions seen so far.
  const std::unordered_map<GE, M2>& white_cache() const { return white_; }

 private:
  struct TorusState {
    GE generator;
    M2 generator_matrix;
    M2 inverter_matrix;  // A with M A = A M^-1, det 1
    GE inverter;         // psi_bar(A)
  };

  static std::size_t Index(TorusId id) { return static_cast<std::size_t>(id); }

  const GE& RequireCenter() const {
    if (!view_.center()) {
      throw Error(ErrorCode::kConfig, "psi/theta need an SL2 black box");
    }
    return *view_.center();
  }

  GE CacheKey(const GE& t) const {
    if (!view_.center()) return t;
    GE tz = group().mul(t, *view_.center());
    return tz < t ? tz : t;
  }

  M2 Remember(const GE& key, const M2& m) {
    ++stats_.whitened_involutions;
    white_.emplace(key, m);
    return m;
  }

  // Some combination of the basis vectors with nonzero square determinant,
  // scaled to determinant one.
  std::optional<M2> InvertibleMember(
      const std::vector<std::vector<FE>>& basis) {
    const K& k = field();
    if (basis.empty()) return std::nullopt;
    for (const auto& v : basis) {
      if (auto m = NormalizeDet(k, Mat2FromVector(v), rng_, opts_.sqrt)) {
        return m;
      }
    }
    for (int i = 0; i < opts_.combination_retries; ++i) {
      std::vector<FE> v(4, k.zero());
      for (const auto& b : basis) {
        FE lambda = k.random(rng_);
        for (std::size_t j = 0; j < 4; ++j) {
          v[j] = k.add(v[j], k.mul(lambda, b[j]));
        }
      }
      if (auto m = NormalizeDet(k, Mat2FromVector(v), rng_, opts_.sqrt)) {
        return m;
      }
    }
    return std::nullopt;
  }

  // Det-one g with g^-1 from g = +-to.
  M2 Conjugator(const M2& from, const M2& to) {
    const K& k = field();
    for (bool flip : {false, true}) {
      const M2 right = flip ? Negate(k, to) : to;
      auto solution = SolveLinear(k, CommutationRows(k, from, right));
      if (auto g = InvertibleMember(solution.basis)) return *g;
    }
    throw Error(ErrorCode::kConjugacy, "involutions are not conjugate");
  }

  void SetUpTorus(TorusId id) {
    const K& k = field();
    TorusState t;
    t.generator = bundle_->torus_generator(id);
    t.generator_matrix = TorusMatrix(id, t.generator);
    auto solution = SolveLinear(
        k, CommutationRows(k, t.generator_matrix,
                           Inverse(k, t.generator_matrix)));
    auto a = InvertibleMember(solution.basis);
    if (!a) {
      throw Error(ErrorCode::kMalformedInput,
                  "no inverting involution for the white torus");
    }
    t.inverter_matrix = *a;
    t.inverter = psi_bar(*a);
    tori_[Index(id)] = t;
  }

  const B* bundle_;
  RecognitionOptions opts_;
  Rng rng_;
  CenterQuotient<G> view_;
  ChangeOfBasis<K> basis_;
  Pgl2So3<K> iso_;
  std::array<TorusState, 2> tori_;
  GE r_involution_;
  M2 r_matrix_;
  std::unordered_map<GE, M2> white_;
  RecognitionStats stats_;
};

// Structural proxies: two mutually inverse computable maps between a matrix
// group over K and the black box.

template <AdjointOracle B>
class Sl2Proxy {
 public:
  using FE = typename Recognizer<B>::FE;
  using GE = typename Recognizer<B>::GE;
  using M2 = Mat2<FE>;

  Sl2Proxy(const B& bundle, std::uint64_t seed, RecognitionOptions opts = {})
      : rec_(bundle, /*with_center=*/true, seed, opts) {}

  static constexpr const char* flavor_name() { return "sl2"; }

  const auto& field() const { return rec_.field(); }
  const auto& group() const { return rec_.group(); }

  GE to_group(const M2& x) { return rec_.psi(x); }
  M2 to_matrix(const GE& y) { return rec_.theta(y); }

  // Round trips are exact in SL2(K).
  bool same_matrix(const M2& x, const M2& y) const {
    return Equal(rec_.field(), x, y);
  }
  M2 random_matrix(Rng& rng) const { return RandomSl2(rec_.field(), rng); }

  Recognizer<B>& recognizer() { return rec_; }

 private:
  Recognizer<B> rec_;
};

template <AdjointOracle B>
class Psl2Proxy {
 public:
  using FE = typename Recognizer<B>::FE;
  using GE = typename Recognizer<B>::GE;
  using M2 = Mat2<FE>;

  Psl2Proxy(const B& bundle, std::uint64_t seed, RecognitionOptions opts = {})
      : rec_(bundle, /*with_center=*/false, seed, opts) {}

  static constexpr const char* flavor_name() { return "psl2"; }

  const auto& field() const { return rec_.field(); }
  const auto& group() const { return rec_.group(); }

  GE to_group(const M2& x) { return rec_.psi_bar(x); }
  M2 to_matrix(const GE& y) { return rec_.theta_bar(y); }

  // PSL2(K) points: det-one matrices up to sign.
  bool same_matrix(const M2& x, const M2& y) const {
    const auto& k = rec_.field();
    return Equal(k, x, y) || Equal(k, x, Negate(k, y));
  }
  M2 random_matrix(Rng& rng) const { return RandomSl2(rec_.field(), rng); }

  Recognizer<B>& recognizer() { return rec_; }

 private:
  Recognizer<B> rec_;
};

// PGL2 needs no white closure: the bundle's two-way map to SO3_sharp(K)
// composed with the change of basis and phi / phi_inv.
template <PglAdjointOracle B>
class Pgl2Proxy {
 public:
  using K = typename B::FieldType;
  using FE = ElementOf<K>;
  using GE = GroupElementOf<typename B::GroupType>;
  using M2 = Mat2<FE>;

  Pgl2Proxy(const B& bundle, std::uint64_t seed, SqrtOptions sqrt = {})
      : bundle_(&bundle),
        rng_(seed),
        basis_(ChangeOfBasis<K>::Build(bundle.field(), rng_)),
        iso_(bundle.field(), sqrt) {}

  static constexpr const char* flavor_name() { return "pgl2"; }

  const K& field() const { return bundle_->field(); }
  const auto& group() const { return bundle_->group(); }

  GE to_group(const M2& a) {
    return bundle_->from_sharp(basis_.FlatToSharp(iso_.phi(a)));
  }
  M2 to_matrix(const GE& x) {
    return iso_.phi_inv(basis_.SharpToFlat(bundle_->to_sharp(x)), rng_);
  }

  bool same_matrix(const M2& x, const M2& y) const {
    return ProjEqual(bundle_->field(), x, y);
  }
  M2 random_matrix(Rng& rng) const { return RandomGl2(bundle_->field(), rng); }

  const ChangeOfBasis<K>& change_of_basis() const { return basis_; }

 private:
  const B* bundle_;
  Rng rng_;
  ChangeOfBasis<K> basis_;
  Pgl2So3<K> iso_;
};

}  // namespace bbrecog

#endif  // BBRECOG_RECOGNITION_HPP_
