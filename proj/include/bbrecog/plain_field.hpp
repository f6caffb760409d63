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

#ifndef BBRECOG_PLAIN_FIELD_HPP_
#define BBRECOG_PLAIN_FIELD_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bbrecog/errors.hpp"
#include "bbrecog/exponent.hpp"

namespace bbrecog {

// Explicit arithmetic in F_q, q = p^k odd, q < 2^32. Elements are indices in
// [0, q): the residue for k = 1, otherwise the base-p digit vector of a
// polynomial reduced modulo a fixed irreducible.
//
// This is the whitebox side: simulators and oracles compute with it, and
// recognition code never sees it.
class PlainField {
 public:
  using Element = std::uint64_t;

  explicit PlainField(std::uint64_t q) : q_(q) {
    if (q < 3 || q >= (std::uint64_t{1} << 32)) {
      throw Error(ErrorCode::kConfig,
                  "q must satisfy 3 <= q < 2^32, got " + std::to_string(q));
    }
    p_ = SmallestPrimeFactor(q);
    if (p_ == 2) {
      throw Error(ErrorCode::kConfig,
                  "q must be odd, got " + std::to_string(q));
    }
    std::uint64_t rest = q;
    degree_ = 0;
    while (rest % p_ == 0) {
      rest /= p_;
      ++degree_;
    }
    if (rest != 1) {
      throw Error(ErrorCode::kConfig,
                  "q must be a prime power, got " + std::to_string(q));
    }
    if (degree_ > 1) modulus_ = FindIrreducible(p_, degree_);
  }

  std::uint64_t q() const { return q_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  Exponent exponent() const { return q_ - 1; }

  // Monic irreducible used for k > 1, low coefficient first, leading 1
  // omitted.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }

  Element add(Element a, Element b) const {
    if (degree_ == 1) return (a + b) % p_;
    return DigitWise(a, b, [this](std::uint64_t x, std::uint64_t y) {
      return (x + y) % p_;
    });
  }

  Element neg(Element a) const {
    if (degree_ == 1) return a == 0 ? 0 : p_ - a;
    return DigitWise(a, 0, [this](std::uint64_t x, std::uint64_t) {
      return x == 0 ? 0 : p_ - x;
    });
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (degree_ == 1) return (a * b) % p_;
    return PolyMulMod(a, b);
  }

  Element inv(Element a) const {
    if (a == 0) throw Error(ErrorCode::kSingular, "inverse of zero");
    return pow(a, q_ - 2);
  }

  Element pow(Element a, Exponent n) const {
    Element result = one();
    Element base = a;
    while (n != 0) {
      if (n & 1) result = mul(result, base);
      base = mul(base, base);
      n >>= 1;
    }
    return result;
  }

  bool eq(Element a, Element b) const { return a == b; }
  bool is_zero(Element a) const { return a == 0; }

  // Image of an integer under Z -> F_q.
  Element from_int(std::int64_t n) const {
    auto r = static_cast<std::int64_t>(n % static_cast<std::int64_t>(p_));
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<Element>(r);
  }

  Element random(std::mt19937_64& rng) const {
    return std::uniform_int_distribution<std::uint64_t>(0, q_ - 1)(rng);
  }

  bool is_valid(Element a) const { return a < q_; }

  // Euler's criterion; needs the true order, so whitebox only.
  bool is_square(Element a) const {
    return a == 0 || pow(a, (q_ - 1) / 2) == 1;
  }

  // Multiplicative order of a nonzero element.
  std::uint64_t order(Element a) const {
    if (a == 0) throw Error(ErrorCode::kDomain, "order of zero");
    std::uint64_t n = q_ - 1;
    for (std::uint64_t r : PrimeFactors(n)) {
      while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
  }

  Element primitive_element() const {
    const auto factors = PrimeFactors(q_ - 1);
    for (Element g = 2; g < q_; ++g) {
      bool primitive = true;
      for (std::uint64_t r : factors) {
        if (pow(g, (q_ - 1) / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) return g;
    }
    throw Error(ErrorCode::kExhausted, "no primitive element");
  }

  static std::vector<std::uint64_t> PrimeFactors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) out.push_back(n);
    return out;
  }

  static std::uint64_t SmallestPrimeFactor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return d;
    }
    return n;
  }

 private:
  using Digits = std::vector<std::uint64_t>;

  Digits ToDigits(Element a) const {
    Digits d(degree_, 0);
    for (unsigned i = 0; i < degree_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Element FromDigits(const Digits& d) const {
    Element a = 0;
    for (unsigned i = degree_; i-- > 0;) a = a * p_ + d[i];
    return a;
  }

  template <class Op>
  Element DigitWise(Element a, Element b, Op op) const {
    Digits x = ToDigits(a);
    Digits y = ToDigits(b);
    for (unsigned i = 0; i < degree_; ++i) x[i] = op(x[i], y[i]);
    return FromDigits(x);
  }

  Element PolyMulMod(Element a, Element b) const {
    Digits x = ToDigits(a);
    Digits y = ToDigits(b);
    Digits prod(2 * degree_ - 1, 0);
    for (unsigned i = 0; i < degree_; ++i) {
      for (unsigned j = 0; j < degree_; ++j) {
        prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
      }
    }
    // x^k = -(modulus_ low part)
    for (unsigned i = 2 * degree_ - 1; i-- > degree_;) {
      std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (unsigned j = 0; j < degree_; ++j) {
        std::uint64_t term = (c * modulus_[j]) % p_;
        std::size_t at = i - degree_ + j;
        prod[at] = (prod[at] + p_ - term) % p_;
      }
    }
    prod.resize(degree_);
    return FromDigits(prod);
  }

  // Polynomials over F_p as coefficient vectors, low first, no trailing 0s.
  static Digits PolyRem(Digits num, const Digits& den, std::uint64_t p) {
    auto inv = [p](std::uint64_t x) {
      std::uint64_t r = 1, b = x % p, e = p - 2;
      while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      return r;
    };
    const std::uint64_t lead_inv = inv(den.back());
    while (num.size() >= den.size()) {
      std::uint64_t c = num.back() * lead_inv % p;
      std::size_t shift = num.size() - den.size();
      for (std::size_t j = 0; j < den.size(); ++j) {
        num[shift + j] = (num[shift + j] + p - c * den[j] % p) % p;
      }
      while (!num.empty() && num.back() == 0) num.pop_back();
    }
    return num;
  }

  // First monic irreducible of the given degree in enumeration order, by
  // trial division with every monic polynomial of degree <= degree/2.
  static Digits FindIrreducible(std::uint64_t p, unsigned degree) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < degree; ++i) count *= p;
    for (std::uint64_t code = 1; code < count; ++code) {
      Digits f(degree + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < degree; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[degree] = 1;
      if (f[0] == 0) continue;
      bool irreducible = true;
      for (unsigned d = 1; d <= degree / 2 && irreducible; ++d) {
        std::uint64_t divisors = 1;
        for (unsigned i = 0; i < d; ++i) divisors *= p;
        for (std::uint64_t g = 0; g < divisors; ++g) {
          Digits h(d + 1, 0);
          std::uint64_t gc = g;
          for (unsigned i = 0; i < d; ++i) {
            h[i] = gc % p;
            gc /= p;
          }
          h[d] = 1;
          if (PolyRem(f, h, p).empty()) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) {
        f.pop_back();
        return f;
      }
    }
    throw Error(ErrorCode::kConfig, "no irreducible polynomial found");
  }

  std::uint64_t q_;
  std::uint64_t p_ = 0;
  unsigned degree_ = 1;
  Digits modulus_;
};

}  // namespace bbrecog

#endif  // BBRECOG_PLAIN_FIELD_HPP_
