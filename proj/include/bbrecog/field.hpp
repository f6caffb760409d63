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

#ifndef BBRECOG_FIELD_HPP_
#define BBRECOG_FIELD_HPP_

// Black-box field interface and the algorithms that only need the field
// operations plus a global exponent E (a^E = 1 for every nonzero a).

#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"

namespace bbrecog {

using Rng = std::mt19937_64;

template <class K>
concept BlackBoxField = requires(const K& k, const typename K::Element& a,
                                 Rng& rng) {
  typename K::Element;
  { k.zero() } -> std::convertible_to<typename K::Element>;
  { k.one() } -> std::convertible_to<typename K::Element>;
  { k.add(a, a) } -> std::convertible_to<typename K::Element>;
  { k.neg(a) } -> std::convertible_to<typename K::Element>;
  { k.mul(a, a) } -> std::convertible_to<typename K::Element>;
  { k.inv(a) } -> std::convertible_to<typename K::Element>;
  { k.eq(a, a) } -> std::same_as<bool>;
  { k.is_zero(a) } -> std::same_as<bool>;
  { k.random(rng) } -> std::convertible_to<typename K::Element>;
  { k.exponent() } -> std::convertible_to<Exponent>;
};

template <BlackBoxField K>
using ElementOf = typename K::Element;

template <BlackBoxField K>
ElementOf<K> Sub(const K& k, const ElementOf<K>& a, const ElementOf<K>& b) {
  return k.add(a, k.neg(b));
}

template <BlackBoxField K>
ElementOf<K> Div(const K& k, const ElementOf<K>& a, const ElementOf<K>& b) {
  return k.mul(a, k.inv(b));
}

template <BlackBoxField K>
ElementOf<K> Square(const K& k, const ElementOf<K>& a) {
  return k.mul(a, a);
}

// n * 1 by double-and-add; the characteristic is unknown but Z -> K is.
template <BlackBoxField K>
ElementOf<K> FromInt(const K& k, std::int64_t n) {
  bool negative = n < 0;
  auto u = static_cast<std::uint64_t>(negative ? -(n + 1) : n) +
           (negative ? 1 : 0);
  ElementOf<K> result = k.zero();
  ElementOf<K> term = k.one();
  while (u != 0) {
    if (u & 1) result = k.add(result, term);
    term = k.add(term, term);
    u >>= 1;
  }
  return negative ? k.neg(result) : result;
}

template <BlackBoxField K>
ElementOf<K> RandomNonzero(const K& k, Rng& rng) {
  for (int i = 0; i < 1024; ++i) {
    ElementOf<K> a = k.random(rng);
    if (!k.is_zero(a)) return a;
  }
  throw Error(ErrorCode::kExhausted, "random source never produced nonzero");
}

template <BlackBoxField K>
ElementOf<K> Pow(const K& k, const ElementOf<K>& a, Exponent n) {
  ElementOf<K> result = k.one();
  ElementOf<K> base = a;
  while (n != 0) {
    if (n & 1) result = k.mul(result, base);
    n >>= 1;
    if (n != 0) base = k.mul(base, base);
  }
  return result;
}

// Negative exponents invert first.
template <BlackBoxField K>
ElementOf<K> PowSigned(const K& k, const ElementOf<K>& a, std::int64_t n) {
  if (n >= 0) return Pow(k, a, static_cast<Exponent>(n));
  return Pow(k, k.inv(a), static_cast<Exponent>(-(n + 1)) + 1);
}

struct SqrtOptions {
  // Independent Tonelli-Shanks failures before declaring NotSquare; the
  // answer is then wrong with probability at most 2^-max_failures.
  int max_failures = 40;
};

namespace field_detail {

inline thread_local std::uint64_t sqrt_calls = 0;

// Smallest M with c^(2^M) = 1, assuming c^(2^limit) = 1.
template <BlackBoxField K>
unsigned TwoOrder(const K& k, ElementOf<K> c, unsigned limit) {
  unsigned order = 0;
  while (!k.eq(c, k.one()) && order <= limit) {
    c = k.mul(c, c);
    ++order;
  }
  return order;
}

// Tonelli-Shanks driven by a multiple E = 2^t m of |K*|. The 2-Sylow seed
// c = z^m has unknown order, so it is measured; each trial is verified and a
// trial that fails (z was a square, or a is not) is retried with a fresh z.
template <BlackBoxField K>
std::optional<ElementOf<K>> TonelliShanks(const K& k, const ElementOf<K>& a,
                                          Rng& rng, const SqrtOptions& opts) {
  if (k.is_zero(a)) return k.zero();
  const ExponentSplit split = SplitExponent(k.exponent());
  const ElementOf<K> t0 = Pow(k, a, split.m);
  const ElementOf<K> r0 = Pow(k, a, (split.m + 1) / 2);
  if (k.eq(t0, k.one())) return r0;
  for (int trial = 0; trial < opts.max_failures; ++trial) {
    ElementOf<K> c = Pow(k, RandomNonzero(k, rng), split.m);
    unsigned m = TwoOrder(k, c, split.t);
    ElementOf<K> t = t0;
    ElementOf<K> r = r0;
    bool ok = true;
    while (!k.eq(t, k.one())) {
      unsigned i = 0;
      ElementOf<K> probe = t;
      while (!k.eq(probe, k.one()) && i < m) {
        probe = k.mul(probe, probe);
        ++i;
      }
      if (i >= m) {
        ok = false;
        break;
      }
      ElementOf<K> b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = k.mul(b, b);
      m = i;
      c = k.mul(b, b);
      t = k.mul(t, c);
      r = k.mul(r, b);
    }
    if (ok && k.eq(k.mul(r, r), a)) return r;
  }
  return std::nullopt;
}

}  // namespace field_detail

// Square root, or nullopt (NotSquare). sqrt(0) = 0.
template <BlackBoxField K>
std::optional<ElementOf<K>> Sqrt(const K& k, const ElementOf<K>& a, Rng& rng,
                                 const SqrtOptions& opts = {}) {
  ++field_detail::sqrt_calls;
  return field_detail::TonelliShanks(k, a, rng, opts);
}

// Calls to Sqrt made on this thread. IsSquare does not count.
inline std::uint64_t SqrtCallCount() { return field_detail::sqrt_calls; }

template <BlackBoxField K>
bool IsSquare(const K& k, const ElementOf<K>& a, Rng& rng,
              const SqrtOptions& opts = {}) {
  return field_detail::TonelliShanks(k, a, rng, opts).has_value();
}

template <BlackBoxField K>
ElementOf<K> FindNonsquare(const K& k, Rng& rng, int retries = 64,
                           const SqrtOptions& opts = {}) {
  for (int i = 0; i < retries; ++i) {
    ElementOf<K> gamma = RandomNonzero(k, rng);
    if (!IsSquare(k, gamma, rng, opts)) return gamma;
  }
  throw Error(ErrorCode::kExhausted,
              "no non-square found; the field black box is inconsistent");
}

// (a, b) with a^2 + b^2 = -1.
template <BlackBoxField K>
std::pair<ElementOf<K>, ElementOf<K>> TwoSquaresMinusOne(
    const K& k, Rng& rng, int retries = 64, const SqrtOptions& opts = {}) {
  const ElementOf<K> minus_one = k.neg(k.one());
  if (auto root = field_detail::TonelliShanks(k, minus_one, rng, opts)) {
    return {*root, k.zero()};
  }
  for (int i = 0; i < retries; ++i) {
    ElementOf<K> a = k.random(rng);
    ElementOf<K> target = Sub(k, minus_one, k.mul(a, a));
    if (auto b = field_detail::TonelliShanks(k, target, rng, opts)) {
      return {a, *b};
    }
  }
  throw Error(ErrorCode::kExhausted, "no a, b with a^2 + b^2 = -1 found");
}

}  // namespace bbrecog

#endif  // BBRECOG_FIELD_HPP_
