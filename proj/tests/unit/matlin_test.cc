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

#include <cstdint>
#include <vector>

#include "bbrecog/matrix.hpp"
#include "bbrecog/simulated_field.hpp"
#include "bbrecog/testing/whitebox.hpp"
#include "gtest/gtest.h"

namespace bbrecog {
namespace {

using testing::Conceal;
using testing::PlainMat3;
using testing::Reveal;
using M2 = Mat2<FieldHandle>;
using M3 = Mat3<FieldHandle>;

M3 RandomMat3(const SimulatedField& k, Rng& rng) {
  M3 m;
  for (auto& v : m.e) v = k.random(rng);
  return m;
}

M2 RandomMat2(const SimulatedField& k, Rng& rng) {
  M2 m;
  for (auto& v : m.e) v = k.random(rng);
  return m;
}

class MatlinTest : public ::testing::Test {
 protected:
  SimulatedField k_{7, 3};
  Rng rng_{5};
};

TEST_F(MatlinTest, InverseOfTransvection) {
  const M2 x = Conceal(k_, PlainMat2{{1, 1, 0, 1}});
  EXPECT_EQ(Reveal(k_, Inverse(k_, x)).e, (PlainMat2{{1, 6, 0, 1}}.e));
}

TEST_F(MatlinTest, DiagonalTorusElementHasDetOne) {
  const M2 x = Conceal(k_, PlainMat2{{3, 0, 0, 5}});
  EXPECT_EQ(Det(k_, x), k_.one());
}

TEST_F(MatlinTest, Mat3TimesInverseIsIdentity) {
  int tested = 0;
  while (tested < 200) {
    const M3 m = RandomMat3(k_, rng_);
    if (k_.is_zero(Det(k_, m))) continue;
    ++tested;
    EXPECT_TRUE(Equal(k_, Mul(k_, m, Inverse(k_, m)), Identity3(k_)));
    EXPECT_TRUE(Equal(k_, Mul(k_, Inverse(k_, m), m), Identity3(k_)));
  }
}

TEST_F(MatlinTest, SingularInverseThrows) {
  const M2 x = Conceal(k_, PlainMat2{{1, 2, 2, 4}});
  try {
    Inverse(k_, x);
    ADD_FAILURE() << "inverted a singular matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
  EXPECT_THROW(Inverse(k_, M3{{k_.zero(), k_.zero(), k_.zero(), k_.zero(),
                               k_.zero(), k_.zero(), k_.zero(), k_.zero(),
                               k_.zero()}}),
               Error);
}

TEST_F(MatlinTest, AssociativityAndMultiplicativeDet) {
  for (std::uint64_t q : {7ULL, 1009ULL}) {
    SimulatedField k(q, 7);
    for (int i = 0; i < 1000; ++i) {
      const M2 x = RandomMat2(k, rng_), y = RandomMat2(k, rng_),
               z = RandomMat2(k, rng_);
      ASSERT_TRUE(Equal(k, Mul(k, Mul(k, x, y), z), Mul(k, x, Mul(k, y, z))));
      ASSERT_EQ(Det(k, Mul(k, x, y)), k.mul(Det(k, x), Det(k, y)));
      const M3 a = RandomMat3(k, rng_), b = RandomMat3(k, rng_),
               c = RandomMat3(k, rng_);
      ASSERT_TRUE(Equal(k, Mul(k, Mul(k, a, b), c), Mul(k, a, Mul(k, b, c))));
      ASSERT_EQ(Det(k, Mul(k, a, b)), k.mul(Det(k, a), Det(k, b)));
    }
  }
}

// Mat3 products agree with a schoolbook product over the plain integers.
TEST_F(MatlinTest, Mat3ProductMatchesPlainArithmetic) {
  for (int i = 0; i < 500; ++i) {
    const M3 a = RandomMat3(k_, rng_), b = RandomMat3(k_, rng_);
    const PlainMat3 pa = Reveal(k_, a), pb = Reveal(k_, b);
    const PlainMat3 got = Reveal(k_, Mul(k_, a, b));
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < 3; ++t) s += pa(r, t) * pb(t, c);
        ASSERT_EQ(got(r, c), s % 7);
      }
    }
  }
}

TEST_F(MatlinTest, ProjEqualExamples) {
  int tested = 0;
  while (tested < 200) {
    const M2 a = RandomMat2(k_, rng_);
    if (k_.is_zero(Det(k_, a))) continue;
    ++tested;
    const FieldHandle lambda = RandomNonzero(k_, rng_);
    EXPECT_TRUE(ProjEqual(k_, a, ScalarMul(k_, lambda, a)));
  }
  const M2 id = Identity2(k_);
  const M2 t = Conceal(k_, PlainMat2{{1, 1, 0, 1}});
  EXPECT_FALSE(ProjEqual(k_, id, t));
}

TEST_F(MatlinTest, ProjEqualIsAnEquivalence) {
  std::vector<M2> pool;
  while (pool.size() < 60) {
    const M2 a = RandomMat2(k_, rng_);
    if (k_.is_zero(Det(k_, a))) continue;
    pool.push_back(a);
    pool.push_back(ScalarMul(k_, RandomNonzero(k_, rng_), a));
  }
  for (const auto& x : pool) {
    EXPECT_TRUE(ProjEqual(k_, x, x));
    for (const auto& y : pool) {
      EXPECT_EQ(ProjEqual(k_, x, y), ProjEqual(k_, y, x));
      for (const auto& z : pool) {
        if (ProjEqual(k_, x, y) && ProjEqual(k_, y, z)) {
          EXPECT_TRUE(ProjEqual(k_, x, z));
        }
      }
    }
  }
}

TEST_F(MatlinTest, SolvesSmallSystem) {
  const FieldHandle o = k_.one(), m = k_.neg(o);
  const auto sol = SolveLinear(k_, {{o, o}, {o, m}}, {o, k_.zero()});
  EXPECT_TRUE(sol.basis.empty());
  EXPECT_EQ(Reveal(k_, sol.particular[0]), 4u);
  EXPECT_EQ(Reveal(k_, sol.particular[1]), 4u);
}

TEST_F(MatlinTest, ZeroSystemHasFullBasis) {
  const FieldHandle z = k_.zero();
  const auto sol = SolveLinear(k_, {{z, z, z}, {z, z, z}});
  EXPECT_EQ(sol.basis.size(), 3u);
}

TEST_F(MatlinTest, InconsistentSystemThrows) {
  const FieldHandle o = k_.one();
  try {
    SolveLinear(k_, {{o, o}, {o, o}}, {o, k_.zero()});
    ADD_FAILURE() << "solved an inconsistent system";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistent);
  }
}

// For M = diag(s, 1/s) with s^2 != 1, the solutions of M A = A M^-1 are the
// antidiagonal matrices.
TEST_F(MatlinTest, InvertingSystemForDiagonalTorus) {
  const M2 m = Conceal(k_, PlainMat2{{3, 0, 0, 5}});
  const auto sol =
      SolveLinear(k_, CommutationRows(k_, m, Inverse(k_, m)));
  ASSERT_EQ(sol.basis.size(), 2u);
  for (const auto& v : sol.basis) {
    const PlainMat2 a = Reveal(k_, Mat2FromVector(v));
    EXPECT_EQ(a.a(), 0u);
    EXPECT_EQ(a.d(), 0u);
  }
}

TEST_F(MatlinTest, SolutionsSatisfyRandomSystems) {
  SimulatedField k(1009, 11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 8;
    std::vector<std::vector<FieldHandle>> a(rows,
                                            std::vector<FieldHandle>(cols));
    for (auto& row : a) {
      for (auto& v : row) {
        v = trial % 3 == 0 && rng_() % 2 ? k.zero() : k.random(rng_);
      }
    }
    std::vector<FieldHandle> x0(cols);
    for (auto& v : x0) v = k.random(rng_);
    std::vector<FieldHandle> rhs(rows, k.zero());
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        rhs[i] = k.add(rhs[i], k.mul(a[i][j], x0[j]));
      }
    }
    const auto sol = SolveLinear(k, a, rhs);
    for (std::size_t i = 0; i < rows; ++i) {
      FieldHandle s = k.zero();
      for (std::size_t j = 0; j < cols; ++j) {
        s = k.add(s, k.mul(a[i][j], sol.particular[j]));
      }
      ASSERT_EQ(s, rhs[i]);
      for (const auto& b : sol.basis) {
        FieldHandle h = k.zero();
        for (std::size_t j = 0; j < cols; ++j) {
          h = k.add(h, k.mul(a[i][j], b[j]));
        }
        ASSERT_TRUE(k.is_zero(h));
      }
    }
  }
}

TEST_F(MatlinTest, CommutationRowsEncodeTheEquation) {
  for (int i = 0; i < 200; ++i) {
    const M2 l = RandomMat2(k_, rng_), r = RandomMat2(k_, rng_),
             x = RandomMat2(k_, rng_);
    const auto rows = CommutationRows(k_, l, r);
    const M2 diff = Add(k_, Mul(k_, l, x), Negate(k_, Mul(k_, x, r)));
    for (std::size_t e = 0; e < 4; ++e) {
      FieldHandle s = k_.zero();
      for (std::size_t j = 0; j < 4; ++j) {
        s = k_.add(s, k_.mul(rows[e][j], x.e[j]));
      }
      ASSERT_EQ(s, diff.e[e]);
    }
  }
}

}  // namespace
}  // namespace bbrecog
