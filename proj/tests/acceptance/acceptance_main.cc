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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bbrecog/adjoint_oracle.hpp"
#include "bbrecog/bench.hpp"
#include "bbrecog/field.hpp"
#include "bbrecog/forms.hpp"
#include "bbrecog/pgl2_so3.hpp"
#include "bbrecog/recognition.hpp"
#include "bbrecog/simulated_field.hpp"
#include "bbrecog/simulated_group.hpp"
#include "bbrecog/testing/exhaustive.hpp"
#include "bbrecog/testing/whitebox.hpp"
#include "bbrecog/verify.hpp"
#include "bbrecog/whitebox.hpp"

namespace bbrecog {
namespace {

using testing::CheckResult;
using testing::Conceal;
using testing::PlainMat3;
using testing::Reveal;

constexpr std::uint64_t kSeed = 20260101;
constexpr std::uint64_t kHomomorphismQs[] = {7, 11, 13, 25, 1009};
constexpr std::uint64_t kPrime31 = 2147483647;

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string detail;

  void Expect(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
  void Absorb(const CheckResult& r) {
    checks += r.checks;
    failures += r.failures;
    if (!r.ok()) detail += " " + r.name + "(" + std::to_string(r.failures) +
                           "/" + std::to_string(r.checks) + ")";
  }
  void Absorb(const ProxyCheckCounts& c, const std::string& name) {
    checks += c.round_trip_checks + c.homomorphism_checks;
    failures += c.failures();
    if (c.failures() != 0) detail += " " + name;
  }
  bool ok() const { return checks > 0 && failures == 0; }
};

// Criterion 1.
bool PhiBijection(std::string& note) {
  Stopwatch watch;
  const CheckResult r = testing::CheckPhiBijection(7, kSeed);
  const double seconds = watch.Seconds();
  note = std::to_string(r.checks) + " checks, " +
         std::to_string(r.failures) + " failures, " +
         std::to_string(seconds) + " s (limit 10 s)";
  return r.ok() && seconds < 10.0;
}

// Criterion 2.
bool HomomorphismSuites(std::string& note) {
  Stopwatch watch;
  Tally t;
  constexpr int kPairs = 1000;
  for (std::uint64_t q : kHomomorphismQs) {
    Rng rng(kSeed + q);
    {
      SimulatedField k(q, kSeed);
      Pgl2So3<SimulatedField> iso(k);
      for (int i = 0; i < kPairs; ++i) {
        const auto a = RandomGl2(k, rng), b = RandomGl2(k, rng);
        t.Expect(Equal(k, iso.phi(Mul(k, a, b)),
                       Mul(k, iso.phi(a), iso.phi(b))));
      }
    }
    {
      SimulatedGroup y(q, Flavor::kSl2, kSeed);
      const auto bundle = AdjointBundle::Build(y);
      Recognizer<AdjointBundle> rec(bundle, true, kSeed + 1);
      const auto& k = rec.field();
      const auto& view = rec.quotient();
      for (int i = 0; i < kPairs; ++i) {
        const auto a = RandomSl2(k, rng), b = RandomSl2(k, rng);
        t.Expect(view.eq(rec.psi_bar(Mul(k, a, b)),
                         view.mul(rec.psi_bar(a), rec.psi_bar(b))));
        t.Expect(y.eq(rec.psi(Mul(k, a, b)), y.mul(rec.psi(a), rec.psi(b))));
      }
      Sl2Proxy<AdjointBundle> proxy(bundle, kSeed + 2);
      t.Absorb(CheckProxy(proxy, kPairs, rng), "sl2@" + std::to_string(q));
    }
    {
      SimulatedGroup y(q, Flavor::kPsl2, kSeed);
      const auto bundle = AdjointBundle::Build(y);
      Psl2Proxy<AdjointBundle> proxy(bundle, kSeed + 3);
      t.Absorb(CheckProxy(proxy, kPairs, rng), "psl2@" + std::to_string(q));
    }
    {
      SimulatedGroup x(q, Flavor::kPgl2, kSeed);
      const auto bundle = PglAdjointBundle::Build(x);
      Pgl2Proxy<PglAdjointBundle> proxy(bundle, kSeed + 4);
      t.Absorb(CheckProxy(proxy, kPairs, rng), "pgl2@" + std::to_string(q));
    }
  }
  const double seconds = watch.Seconds();
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures, " + std::to_string(seconds) + " s (limit 120 s)" +
         t.detail;
  return t.ok() && seconds < 120.0;
}

// Criterion 3.
bool RoundTrips(std::string& note) {
  Tally t;
  t.Absorb(testing::CheckSl2RoundTrips(7, kSeed));
  for (std::uint64_t q : {std::uint64_t{1009}, kPrime31}) {
    SimulatedGroup y(q, Flavor::kSl2, kSeed);
    const auto bundle = AdjointBundle::Build(y);
    Recognizer<AdjointBundle> rec(bundle, true, kSeed + 1);
    const auto& k = rec.field();
    Rng rng(kSeed + q);
    for (int i = 0; i < 1000; ++i) {
      const auto x = RandomSl2(k, rng);
      t.Expect(Equal(k, rec.theta(rec.psi(x)), x));
      const GroupHandle g = y.random(rng);
      t.Expect(y.eq(rec.psi(rec.theta(g)), g));
    }
  }
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures" + t.detail;
  return t.ok();
}

// Criterion 4.
bool Transvections(std::string& note) {
  Tally t;
  t.Absorb(testing::CheckTransvectionCensus(7, kSeed));
  const PlainField f(1009);
  Rng rng(kSeed);
  for (int i = 0; i < 1000; ++i) {
    const PlainMat2 x = RandomSl2(f, rng);
    const auto factors = TransvectionDecompose(f, x);
    PlainMat2 product = Identity2(f);
    bool triangular = true;
    for (const auto& m : factors) {
      product = Mul(f, product, m);
      triangular = triangular && testing::IsUnipotentTriangular(m);
    }
    t.Expect(factors.size() <= 4 && triangular && Equal(f, product, x));
  }
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures" + t.detail;
  return t.ok();
}

// Criterion 5.
bool SquareRoots(std::string& note) {
  Tally t;
  Rng rng(kSeed);
  for (std::uint64_t q : {7ULL, 9ULL, 11ULL, 13ULL, 25ULL, 27ULL, 1009ULL,
                          1048573ULL, 2147483647ULL}) {
    SimulatedField k(q, kSeed);
    for (int i = 0; i < 10000; ++i) {
      const auto a = k.random(rng);
      const auto root = Sqrt(k, k.mul(a, a), rng);
      t.Expect(root && (k.eq(*root, a) || k.eq(*root, k.neg(a))));
    }
    for (int i = 0; i < 100; ++i) {
      const auto [a, b] = TwoSquaresMinusOne(k, rng);
      t.Expect(k.eq(k.add(k.mul(a, a), k.mul(b, b)), k.neg(k.one())));
    }
  }
  for (std::uint64_t q : {7ULL, 9ULL, 25ULL, 27ULL, 121ULL, 1009ULL, 2187ULL,
                          9973ULL}) {
    SimulatedField k(q, kSeed);
    const PlainField f(q);
    std::vector<bool> square(q, false);
    for (std::uint64_t v = 0; v < q; ++v) square[f.mul(v, v)] = true;
    for (std::uint64_t v = 0; v < q; ++v) {
      const auto root = Sqrt(k, Conceal(k, v), rng);
      t.Expect(root.has_value() == square[v]);
      if (root) t.Expect(f.mul(Reveal(k, *root), Reveal(k, *root)) == v);
    }
  }
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures";
  return t.ok();
}

// Schoolbook 3x3 product over a prime field, independent of the library.
PlainMat3 SchoolbookMul(const PlainMat3& x, const PlainMat3& y,
                        std::uint64_t p) {
  PlainMat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      unsigned __int128 s = 0;
      for (int l = 0; l < 3; ++l) {
        s += static_cast<unsigned __int128>(x.e[3 * i + l]) * y.e[3 * l + j];
      }
      out.e[3 * i + j] = static_cast<std::uint64_t>(s % p);
    }
  }
  return out;
}

// Criterion 6.
bool ChangeOfBasisChecks(std::string& note) {
  Tally t;
  Rng rng(kSeed);
  for (std::uint64_t q : kHomomorphismQs) {
    SimulatedField k(q, kSeed);
    const PlainField f(q);
    const PlainMat3 j{{0, 0, 1, 0, f.neg(2), 0, 1, 0, 0}};
    const PlainMat3 two_i{{2, 0, 0, 0, 2, 0, 0, 0, 2}};
    std::vector<ChangeOfBasis<SimulatedField>> bases;
    for (int i = 0; i < 50; ++i) {
      bases.push_back(ChangeOfBasis<SimulatedField>::Build(k, rng));
      const PlainMat3 p = Reveal(k, bases.back().P());
      const PlainMat3 gram =
          f.characteristic() == q
              ? SchoolbookMul(SchoolbookMul(p, j, q), Transpose(p), q)
              : Mul(f, Mul(f, p, j), Transpose(p));
      t.Expect(gram.e == two_i.e);
    }
    Pgl2So3<SimulatedField> iso(k);
    for (int i = 0; i < 1000; ++i) {
      const auto& b1 = bases[i % bases.size()];
      const auto& b2 = bases[(i + 1) % bases.size()];
      const auto flat = iso.phi(RandomGl2(k, rng));
      const auto sharp = b1.FlatToSharp(flat);
      t.Expect(InOSharp(k, sharp));
      t.Expect(InOFlat(k, b2.SharpToFlat(sharp)));
    }
  }
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures";
  return t.ok();
}

// Criterion 7.
bool WhiteClosure(std::string& note) {
  Tally t;
  for (Flavor flavor : {Flavor::kSl2, Flavor::kPsl2}) {
    const CheckResult w = testing::CheckInvolutionWhitening(7, flavor, kSeed);
    const CheckResult b = testing::CheckThetaBar(7, flavor, kSeed);
    t.Absorb(w);
    t.Absorb(b);
    t.Expect(w.checks == 2 * 21);
    t.Expect(b.checks == 168);
  }
  note = std::to_string(t.checks) + " checks, " + std::to_string(t.failures) +
         " failures" + t.detail;
  return t.ok();
}

// Criterion 8.
bool Scaling(std::string& note) {
  std::vector<ScalingSample> samples;
  for (std::uint64_t q : {1021ULL, 1048573ULL, 1073741789ULL}) {
    samples.push_back(MeasureSl2Proxy(q, kSeed, 10));
  }
  const double d = FitLogExponent(samples);
  const double ratio = static_cast<double>(samples.back().total()) /
                       static_cast<double>(samples.front().total());
  const double bound = std::pow(3.0, d) * 1.5;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "ops %llu, %llu, %llu; fitted d = %.3f; ratio %.3f <= %.3f",
                static_cast<unsigned long long>(samples[0].total()),
                static_cast<unsigned long long>(samples[1].total()),
                static_cast<unsigned long long>(samples[2].total()), d, ratio,
                bound);
  note = buf;
  return d <= 4.0 && ratio <= bound;
}

// Criterion 9: decode hooks refuse to run outside a scope, no scope leaks
// out of the suites, and code outside the oracle cannot mint a capability.
bool Purity(bool suites_passed, std::string& note) {
  Tally t;
  t.Expect(!WhiteboxActive());
  SimulatedField k(7, kSeed);
  SimulatedGroup y(7, Flavor::kSl2, kSeed);
  auto refuses = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kPurityViolation;
    }
    return false;
  };
  t.Expect(refuses([&] { k.Reveal(k.one()); }));
  t.Expect(refuses([&] { k.Conceal(1); }));
  t.Expect(refuses([&] { y.Reveal(y.identity()); }));
  t.Expect(refuses([&] { y.Conceal(PlainMat2{{1, 0, 0, 1}}); }));
  t.Expect(refuses([&] { y.Plain(); }));
  const std::string compile = std::string(BBRECOG_CXX) +
                              " -std=c++20 -fsyntax-only -I" BBRECOG_INCLUDE
                              " -I" BBRECOG_VENDOR " " BBRECOG_PURITY_SOURCE;
  const int control = std::system((compile + " 2>/dev/null").c_str());
  const int violation = std::system(
      (compile + " -DBBRECOG_ATTEMPT_WHITEBOX=1 2>/dev/null").c_str());
  t.Expect(control == 0);
  t.Expect(violation != 0);
  note = std::to_string(t.checks) + " barrier checks, " +
         std::to_string(t.failures) + " failures; control compile " +
         (control == 0 ? "ok" : "FAILED") + ", violation compile " +
         (violation != 0 ? "rejected" : "ACCEPTED") + "; criteria 1-8 " +
         (suites_passed ? "passed" : "did not all pass");
  return t.ok() && suites_passed;
}

}  // namespace
}  // namespace bbrecog

int main() {
  using Criterion = std::function<bool(std::string&)>;
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"phi bijection at q=7", bbrecog::PhiBijection},
      {"homomorphism suites", bbrecog::HomomorphismSuites},
      {"round trips", bbrecog::RoundTrips},
      {"transvection decomposition", bbrecog::Transvections},
      {"square roots", bbrecog::SquareRoots},
      {"change of basis", bbrecog::ChangeOfBasisChecks},
      {"white closure at q=7", bbrecog::WhiteClosure},
      {"operation-count scaling", bbrecog::Scaling},
  };
  bool all = true;
  int index = 1;
  auto report = [&](const char* name, bool ok, const std::string& note) {
    std::printf("%s criterion %d: %s: %s\n", ok ? "PASS" : "FAIL", index++,
                name, note.c_str());
    std::fflush(stdout);
    all = all && ok;
  };
  for (const auto& [name, run] : criteria) {
    std::string note;
    bool ok = false;
    try {
      ok = run(note);
      ok = ok && !bbrecog::WhiteboxActive();
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    report(name, ok, note);
  }
  std::string note;
  bool ok = false;
  try {
    ok = bbrecog::Purity(all, note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("black-box purity", ok, note);
  return all ? 0 : 1;
}
