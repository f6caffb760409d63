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

#ifndef BBRECOG_MATRIX_HPP_
#define BBRECOG_MATRIX_HPP_

// 2x2 and 3x3 matrices over a black-box field, projective equality, and
// exact Gaussian elimination for the small systems used by recognition.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bbrecog/errors.hpp"
#include "bbrecog/field.hpp"

namespace bbrecog {

// Row-major [[a, b], [c, d]].
template <class E>
struct Mat2 {
  std::array<E, 4> e{};

  E& operator()(std::size_t i, std::size_t j) { return e[2 * i + j]; }
  const E& operator()(std::size_t i, std::size_t j) const {
    return e[2 * i + j];
  }
  const E& a() const { return e[0]; }
  const E& b() const { return e[1]; }
  const E& c() const { return e[2]; }
  const E& d() const { return e[3]; }
};

template <class E>
struct Mat3 {
  std::array<E, 9> e{};

  E& operator()(std::size_t i, std::size_t j) { return e[3 * i + j]; }
  const E& operator()(std::size_t i, std::size_t j) const {
    return e[3 * i + j];
  }
};

template <BlackBoxField K>
Mat2<ElementOf<K>> MakeMat2(const K&, ElementOf<K> a, ElementOf<K> b,
                            ElementOf<K> c, ElementOf<K> d) {
  return Mat2<ElementOf<K>>{{a, b, c, d}};
}

template <BlackBoxField K>
Mat2<ElementOf<K>> Identity2(const K& k) {
  return {{k.one(), k.zero(), k.zero(), k.one()}};
}

template <BlackBoxField K>
Mat3<ElementOf<K>> Identity3(const K& k) {
  Mat3<ElementOf<K>> m;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = i == j ? k.one() : k.zero();
  }
  return m;
}

template <BlackBoxField K>
Mat2<ElementOf<K>> Mul(const K& k, const Mat2<ElementOf<K>>& x,
                       const Mat2<ElementOf<K>>& y) {
  Mat2<ElementOf<K>> out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out(i, j) = k.add(k.mul(x(i, 0), y(0, j)), k.mul(x(i, 1), y(1, j)));
    }
  }
  return out;
}

template <BlackBoxField K>
Mat3<ElementOf<K>> Mul(const K& k, const Mat3<ElementOf<K>>& x,
                       const Mat3<ElementOf<K>>& y) {
  Mat3<ElementOf<K>> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      ElementOf<K> acc = k.mul(x(i, 0), y(0, j));
      acc = k.add(acc, k.mul(x(i, 1), y(1, j)));
      out(i, j) = k.add(acc, k.mul(x(i, 2), y(2, j)));
    }
  }
  return out;
}

template <BlackBoxField K>
ElementOf<K> Det(const K& k, const Mat2<ElementOf<K>>& x) {
  return Sub(k, k.mul(x.a(), x.d()), k.mul(x.b(), x.c()));
}

template <BlackBoxField K>
ElementOf<K> Det(const K& k, const Mat3<ElementOf<K>>& x) {
  auto minor = [&](std::size_t r0, std::size_t r1, std::size_t c0,
                   std::size_t c1) {
    return Sub(k, k.mul(x(r0, c0), x(r1, c1)), k.mul(x(r0, c1), x(r1, c0)));
  };
  ElementOf<K> acc = k.mul(x(0, 0), minor(1, 2, 1, 2));
  acc = Sub(k, acc, k.mul(x(0, 1), minor(1, 2, 0, 2)));
  return k.add(acc, k.mul(x(0, 2), minor(1, 2, 0, 1)));
}

template <BlackBoxField K>
ElementOf<K> Trace(const K& k, const Mat2<ElementOf<K>>& x) {
  return k.add(x.a(), x.d());
}

template <class E>
Mat3<E> Transpose(const Mat3<E>& x) {
  Mat3<E> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = x(j, i);
  }
  return out;
}

template <class E>
Mat2<E> Transpose(const Mat2<E>& x) {
  return Mat2<E>{{x.a(), x.c(), x.b(), x.d()}};
}

template <BlackBoxField K, class M>
M ScalarMul(const K& k, const ElementOf<K>& lambda, M x) {
  for (auto& v : x.e) v = k.mul(lambda, v);
  return x;
}

template <BlackBoxField K, class M>
M Negate(const K& k, M x) {
  for (auto& v : x.e) v = k.neg(v);
  return x;
}

template <BlackBoxField K, class M>
M Add(const K& k, M x, const M& y) {
  for (std::size_t i = 0; i < x.e.size(); ++i) x.e[i] = k.add(x.e[i], y.e[i]);
  return x;
}

template <BlackBoxField K, class M>
bool Equal(const K& k, const M& x, const M& y) {
  for (std::size_t i = 0; i < x.e.size(); ++i) {
    if (!k.eq(x.e[i], y.e[i])) return false;
  }
  return true;
}

template <BlackBoxField K>
Mat2<ElementOf<K>> Inverse(const K& k, const Mat2<ElementOf<K>>& x) {
  ElementOf<K> det = Det(k, x);
  if (k.is_zero(det)) throw Error(ErrorCode::kSingular, "singular 2x2 matrix");
  ElementOf<K> s = k.inv(det);
  return {{k.mul(s, x.d()), k.neg(k.mul(s, x.b())), k.neg(k.mul(s, x.c())),
           k.mul(s, x.a())}};
}

template <BlackBoxField K>
Mat3<ElementOf<K>> Inverse(const K& k, const Mat3<ElementOf<K>>& x) {
  ElementOf<K> det = Det(k, x);
  if (k.is_zero(det)) throw Error(ErrorCode::kSingular, "singular 3x3 matrix");
  ElementOf<K> s = k.inv(det);
  Mat3<ElementOf<K>> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // adj(x)(i, j) = cofactor(j, i)
      std::size_t r0 = j == 0 ? 1 : 0, r1 = j == 2 ? 1 : 2;
      std::size_t c0 = i == 0 ? 1 : 0, c1 = i == 2 ? 1 : 2;
      ElementOf<K> m =
          Sub(k, k.mul(x(r0, c0), x(r1, c1)), k.mul(x(r0, c1), x(r1, c0)));
      if ((i + j) % 2 == 1) m = k.neg(m);
      out(i, j) = k.mul(s, m);
    }
  }
  return out;
}

// True iff y = lambda * x for some nonzero lambda. One inversion: lambda is
// read off the first nonzero entry of x and then checked everywhere.
template <BlackBoxField K>
bool ProjEqual(const K& k, const Mat2<ElementOf<K>>& x,
               const Mat2<ElementOf<K>>& y) {
  std::size_t pivot = 0;
  while (pivot < 4 && k.is_zero(x.e[pivot])) ++pivot;
  if (pivot == 4) return false;
  if (k.is_zero(y.e[pivot])) return false;
  ElementOf<K> lambda = Div(k, y.e[pivot], x.e[pivot]);
  for (std::size_t i = 0; i < 4; ++i) {
    if (!k.eq(k.mul(lambda, x.e[i]), y.e[i])) return false;
  }
  return true;
}

template <class E>
struct LinearSolution {
  std::vector<E> particular;          // one solution (zeros if homogeneous)
  std::vector<std::vector<E>> basis;  // basis of the homogeneous solutions
};

// Solves rows * x = rhs by reduction to row echelon form; the pivot is the
// first nonzero entry in each column. An empty rhs means homogeneous.
template <BlackBoxField K>
LinearSolution<ElementOf<K>> SolveLinear(
    const K& k, std::vector<std::vector<ElementOf<K>>> rows,
    std::vector<ElementOf<K>> rhs = {}) {
  using E = ElementOf<K>;
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  if (rhs.empty()) rhs.assign(m, k.zero());
  if (rhs.size() != m) {
    throw Error(ErrorCode::kDomain, "rhs length does not match system");
  }
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorCode::kDomain, "ragged system");
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t sel = r;
    while (sel < m && k.is_zero(rows[sel][col])) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[r]);
    std::swap(rhs[sel], rhs[r]);
    E scale = k.inv(rows[r][col]);
    for (auto& v : rows[r]) v = k.mul(scale, v);
    rhs[r] = k.mul(scale, rhs[r]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || k.is_zero(rows[i][col])) continue;
      E f = rows[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        rows[i][j] = Sub(k, rows[i][j], k.mul(f, rows[r][j]));
      }
      rhs[i] = Sub(k, rhs[i], k.mul(f, rhs[r]));
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i) {
    if (!k.is_zero(rhs[i])) {
      throw Error(ErrorCode::kInconsistent, "linear system has no solution");
    }
  }
  LinearSolution<E> out;
  out.particular.assign(n, k.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    out.particular[pivots[i]] = rhs[i];
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<E> v(n, k.zero());
    v[f] = k.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = k.neg(rows[i][f]);
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

template <class E>
Mat2<E> Mat2FromVector(const std::vector<E>& v) {
  return Mat2<E>{{v[0], v[1], v[2], v[3]}};
}

// Rows of the linear system L * X = X * R in the entries of X (row-major).
template <BlackBoxField K>
std::vector<std::vector<ElementOf<K>>> CommutationRows(
    const K& k, const Mat2<ElementOf<K>>& left,
    const Mat2<ElementOf<K>>& right) {
  std::vector<std::vector<ElementOf<K>>> rows;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      // sum_l L(i,l) X(l,j) - sum_l X(i,l) R(l,j) = 0
      std::vector<ElementOf<K>> row(4, k.zero());
      for (std::size_t l = 0; l < 2; ++l) {
        row[2 * l + j] = k.add(row[2 * l + j], left(i, l));
        row[2 * i + l] = Sub(k, row[2 * i + l], right(l, j));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace bbrecog

#endif  // BBRECOG_MATRIX_HPP_
