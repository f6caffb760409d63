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

#ifndef BBRECOG_TESTING_EXHAUSTIVE_HPP_
#define BBRECOG_TESTING_EXHAUSTIVE_HPP_

// Exhaustive comparisons against brute-force oracles at small q. Shared by
// the acceptance suite and the command-line selftest.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bbrecog/adjoint_oracle.hpp"
#include "bbrecog/pgl2_so3.hpp"
#include "bbrecog/recognition.hpp"
#include "bbrecog/simulated_field.hpp"
#include "bbrecog/simulated_group.hpp"
#include "bbrecog/testing/whitebox.hpp"

namespace bbrecog {
namespace testing {

struct CheckResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;

  bool ok() const { return checks > 0 && failures == 0; }
  void Expect(bool condition) {
    ++checks;
    if (!condition) ++failures;
  }
};

inline bool IsUnipotentTriangular(const PlainMat2& m) {
  return m.a() == 1 && m.d() == 1 && (m.b() == 0 || m.c() == 0);
}

// phi is a bijection from PGL2(F_q) onto {M : Mᵗ J M = J, det M = 1}, agrees
// with the conjugation action, and phi_inv inverts it projectively.
inline CheckResult CheckPhiBijection(std::uint64_t q, std::uint64_t seed) {
  CheckResult r{"phi_bijection"};
  SimulatedField k(q, seed);
  Pgl2So3<SimulatedField> iso(k);
  Rng rng(seed);
  PlainField f(q);
  const auto domain = EnumeratePgl2(f);
  const auto target = EnumerateSo3Flat(f);
  std::set<std::array<std::uint64_t, 9>> image;
  for (const auto& a : domain) {
    const auto ka = Conceal(k, a);
    const auto b = iso.phi(ka);
    const PlainMat3 plain_b = Reveal(k, b);
    r.Expect(plain_b.e == ConjugationAction(f, a).e);
    image.insert(plain_b.e);
    r.Expect(ProjEqual(f, Reveal(k, iso.phi_inv(b, rng)), a));
  }
  std::set<std::array<std::uint64_t, 9>> expected;
  for (const auto& m : target) expected.insert(m.e);
  r.Expect(image.size() == domain.size());
  r.Expect(image == expected);
  return r;
}

// Every element of SL2(F_q) factors into at most four unit triangular
// matrices whose product is exact.
inline CheckResult CheckTransvectionCensus(std::uint64_t q,
                                           std::uint64_t seed) {
  CheckResult r{"transvection_census"};
  SimulatedField k(q, seed);
  PlainField f(q);
  for (const auto& x : EnumerateSl2(f)) {
    const auto factors = TransvectionDecompose(k, Conceal(k, x));
    PlainMat2 product = Identity2(f);
    bool triangular = true;
    for (const auto& factor : factors) {
      const PlainMat2 p = Reveal(k, factor);
      triangular = triangular && IsUnipotentTriangular(p);
      product = Mul(f, product, p);
    }
    r.Expect(factors.size() <= 4 && triangular && Equal(f, product, x));
  }
  return r;
}

// Recognition context for an exhaustive run over a small simulated box.
struct SmallBox {
  SmallBox(std::uint64_t q, Flavor flavor, std::uint64_t seed)
      : group(q, flavor, seed), bundle(AdjointBundle::Build(group)),
        recognizer(bundle, flavor == Flavor::kSl2, seed + 1) {}

  SimulatedGroup group;
  AdjointBundle bundle;
  Recognizer<AdjointBundle> recognizer;
};

inline std::vector<PlainMat2> PlainInvolutions(const PlainField& f) {
  std::vector<PlainMat2> out;
  for (const auto& m : EnumeratePsl2(f)) {
    if (f.add(m.a(), m.d()) == 0) out.push_back(m);
  }
  return out;
}

// Every involution of the quotient whitens to a matrix consistent with
// psi_bar and squaring to a scalar.
inline CheckResult CheckInvolutionWhitening(std::uint64_t q, Flavor flavor,
                                            std::uint64_t seed) {
  CheckResult r{"involution_whitening"};
  SmallBox box(q, flavor, seed);
  auto& rec = box.recognizer;
  const auto& k = rec.field();
  const PlainField f(q);
  for (const auto& m : PlainInvolutions(f)) {
    const GroupHandle t = Conceal(box.group, m);
    const auto w = rec.whiten_involution(t);
    const PlainMat2 sq = Reveal(k, Mul(k, w, w));
    r.Expect(rec.quotient().eq(rec.psi_bar(w), t));
    r.Expect(sq.b() == 0 && sq.c() == 0 && sq.a() == sq.d());
  }
  return r;
}

// Every element of N(torus) modulo the center whitens consistently. The
// normalizer is found by brute force over the quotient group.
inline CheckResult CheckNormalizerWhitening(std::uint64_t q, Flavor flavor,
                                            TorusId id, std::uint64_t seed,
                                            std::uint64_t* normalizer_size) {
  CheckResult r{std::string("normalizer_whitening_") + TorusName(id)};
  SmallBox box(q, flavor, seed);
  auto& rec = box.recognizer;
  const auto& view = rec.quotient();
  std::vector<GroupHandle> torus{view.identity()};
  const GroupHandle s = rec.torus_generator(id);
  for (GroupHandle x = s; !IsIdentity(view, x); x = view.mul(x, s)) {
    torus.push_back(x);
  }
  auto in_torus = [&](const GroupHandle& x) {
    return std::any_of(torus.begin(), torus.end(),
                       [&](const GroupHandle& t) { return view.eq(t, x); });
  };
  const PlainField f(q);
  std::uint64_t count = 0;
  for (const auto& m : EnumeratePsl2(f)) {
    const GroupHandle y = Conceal(box.group, m);
    if (!in_torus(Conjugate(view, s, y))) continue;
    ++count;
    r.Expect(view.eq(rec.psi_bar(rec.whiten_normalizer(id, y)), y));
  }
  if (normalizer_size) *normalizer_size = count;
  return r;
}

// theta_bar inverts psi_bar up to sign on all of PSL2(F_q).
inline CheckResult CheckThetaBar(std::uint64_t q, Flavor flavor,
                                 std::uint64_t seed) {
  CheckResult r{"theta_bar"};
  SmallBox box(q, flavor, seed);
  auto& rec = box.recognizer;
  const auto& k = rec.field();
  const PlainField f(q);
  for (const auto& m : EnumeratePsl2(f)) {
    const auto x = Conceal(k, m);
    const GroupHandle y = rec.psi_bar(x);
    const PlainMat2 back = Reveal(k, rec.theta_bar(y));
    r.Expect(Equal(f, back, m) || Equal(f, back, Negate(f, m)));
  }
  return r;
}

// theta(psi(x)) = x on SL2(F_q) and psi(theta(y)) = y on Y, exactly.
inline CheckResult CheckSl2RoundTrips(std::uint64_t q, std::uint64_t seed) {
  CheckResult r{"sl2_round_trips"};
  SmallBox box(q, Flavor::kSl2, seed);
  auto& rec = box.recognizer;
  const auto& k = rec.field();
  const PlainField f(q);
  for (const auto& m : EnumerateSl2(f)) {
    r.Expect(Equal(f, Reveal(k, rec.theta(rec.psi(Conceal(k, m)))), m));
    const GroupHandle y = Conceal(box.group, m);
    r.Expect(box.group.eq(rec.psi(rec.theta(y)), y));
  }
  return r;
}

// The PGL2 proxy's backward map is a bijection onto PGL2(K) and both round
// trips are identities.
inline CheckResult CheckPgl2Bijection(std::uint64_t q, std::uint64_t seed) {
  CheckResult r{"pgl2_bijection"};
  SimulatedGroup x(q, Flavor::kPgl2, seed);
  const auto bundle = PglAdjointBundle::Build(x);
  Pgl2Proxy<PglAdjointBundle> proxy(bundle, seed + 1);
  const auto& k = proxy.field();
  const PlainField f(q);
  std::set<std::array<std::uint64_t, 4>> seen;
  const auto all = EnumeratePgl2(f);
  for (const auto& m : all) {
    const GroupHandle h = Conceal(x, m);
    const auto a = proxy.to_matrix(h);
    PlainMat2 p = Reveal(k, a);
    const std::uint64_t lead = p.a() != 0 ? p.a() : p.b();
    p = ScalarMul(f, f.inv(lead), p);
    seen.insert(p.e);
    r.Expect(x.eq(proxy.to_group(a), h));
  }
  r.Expect(seen.size() == all.size());
  return r;
}

}  // namespace testing
}  // namespace bbrecog

#endif  // BBRECOG_TESTING_EXHAUSTIVE_HPP_
