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

#ifndef BBRECOG_GROUP_HPP_
#define BBRECOG_GROUP_HPP_

// Black-box group interface, equality modulo the center, and the
// order-parity tools driven by the global exponent E = 2^t m.

#include <concepts>
#include <optional>

#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"
#include "bbrecog/field.hpp"

namespace bbrecog {

// White maximal tori of the encrypted group. S has order twice an odd
// number; R contains an element of order 4.
enum class TorusId { kS, kR };

inline const char* TorusName(TorusId id) {
  return id == TorusId::kS ? "S" : "R";
}

template <class G>
concept BlackBoxGroup = requires(const G& g, const typename G::Element& x,
                                 Rng& rng) {
  typename G::Element;
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.mul(x, x) } -> std::convertible_to<typename G::Element>;
  { g.inv(x) } -> std::convertible_to<typename G::Element>;
  { g.eq(x, x) } -> std::same_as<bool>;
  { g.random(rng) } -> std::convertible_to<typename G::Element>;
  { g.exponent() } -> std::convertible_to<Exponent>;
};

template <BlackBoxGroup G>
using GroupElementOf = typename G::Element;

// Y/Z(Y) as a black-box group: same handles, equality up to the central
// involution z. Without z it is Y itself.
template <BlackBoxGroup G>
class CenterQuotient {
 public:
  using Element = GroupElementOf<G>;

  explicit CenterQuotient(const G& group,
                          std::optional<Element> center = std::nullopt)
      : g_(&group), z_(std::move(center)) {}

  const G& group() const { return *g_; }
  const std::optional<Element>& center() const { return z_; }

  Element identity() const { return g_->identity(); }
  Element mul(const Element& x, const Element& y) const {
    return g_->mul(x, y);
  }
  Element inv(const Element& x) const { return g_->inv(x); }
  Element random(Rng& rng) const { return g_->random(rng); }
  Exponent exponent() const { return g_->exponent(); }

  // x == y modulo the center, i.e. x y^-1 is 1 or z.
  bool eq(const Element& x, const Element& y) const {
    if (g_->eq(x, y)) return true;
    if (!z_) return false;
    return g_->eq(g_->mul(x, g_->inv(y)), *z_);
  }

 private:
  const G* g_;
  std::optional<Element> z_;
};

template <BlackBoxGroup G>
GroupElementOf<G> GroupPow(const G& g, const GroupElementOf<G>& x,
                           Exponent n) {
  GroupElementOf<G> result = g.identity();
  GroupElementOf<G> base = x;
  while (n != 0) {
    if (n & 1) result = g.mul(result, base);
    n >>= 1;
    if (n != 0) base = g.mul(base, base);
  }
  return result;
}

template <BlackBoxGroup G>
bool IsIdentity(const G& g, const GroupElementOf<G>& x) {
  return g.eq(x, g.identity());
}

template <BlackBoxGroup G>
bool Commute(const G& g, const GroupElementOf<G>& x,
             const GroupElementOf<G>& y) {
  return g.eq(g.mul(x, y), g.mul(y, x));
}

// y^-1 x y
template <BlackBoxGroup G>
GroupElementOf<G> Conjugate(const G& g, const GroupElementOf<G>& x,
                            const GroupElementOf<G>& y) {
  return g.mul(g.inv(y), g.mul(x, y));
}

// The order of y divides the odd part m of E.
template <BlackBoxGroup G>
bool IsOddOrder(const G& g, const GroupElementOf<G>& y) {
  return IsIdentity(g, GroupPow(g, y, SplitExponent(g.exponent()).m));
}

// The involution of <y>, or nullopt when y has odd order.
template <BlackBoxGroup G>
std::optional<GroupElementOf<G>> ExtractInvolution(const G& g,
                                                   const GroupElementOf<G>& y) {
  const ExponentSplit split = SplitExponent(g.exponent());
  GroupElementOf<G> w = GroupPow(g, y, split.m);
  if (IsIdentity(g, w)) return std::nullopt;
  for (unsigned i = 0; i < split.t; ++i) {
    GroupElementOf<G> next = g.mul(w, w);
    if (IsIdentity(g, next)) return w;
    w = next;
  }
  throw Error(ErrorCode::kDomain,
              "element order exceeds the published exponent");
}

struct InvolutionSearch {
  int max_draws = 64;
  int centrality_samples = 32;
  int noncentral_limit = 8;
};

// Extracts involutions from random elements and keeps the first one that
// commutes with `centrality_samples` random elements. nullopt once
// `noncentral_limit` involutions failed the test (centerless flavors).
template <BlackBoxGroup G>
std::optional<GroupElementOf<G>> FindCentralInvolution(
    const G& g, Rng& rng, const InvolutionSearch& opts = {}) {
  int noncentral = 0;
  for (int draw = 0; draw < opts.max_draws; ++draw) {
    auto t = ExtractInvolution(g, g.random(rng));
    if (!t) continue;
    bool central = true;
    for (int i = 0; i < opts.centrality_samples; ++i) {
      if (!Commute(g, *t, g.random(rng))) {
        central = false;
        break;
      }
    }
    if (central) return t;
    if (++noncentral >= opts.noncentral_limit) break;
  }
  return std::nullopt;
}

template <BlackBoxGroup G>
GroupElementOf<G> RandomInvolution(const G& g, Rng& rng, int retries = 64,
                                   int* draws_used = nullptr) {
  for (int i = 1; i <= retries; ++i) {
    if (auto t = ExtractInvolution(g, g.random(rng))) {
      if (draws_used) *draws_used = i;
      return *t;
    }
  }
  throw Error(ErrorCode::kExhausted, "no even-order element drawn");
}

}  // namespace bbrecog

#endif  // BBRECOG_GROUP_HPP_
