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

#ifndef BBRECOG_BENCH_HPP_
#define BBRECOG_BENCH_HPP_

// Black-box operation counts for SL2 recognition as a function of q.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bbrecog/adjoint_oracle.hpp"
#include "bbrecog/recognition.hpp"
#include "bbrecog/simulated_group.hpp"

namespace bbrecog {

struct OpCounts {
  FieldTally field;
  GroupTally group;
  std::uint64_t total() const { return field.total() + group.total(); }
};

struct ScalingSample {
  std::uint64_t q = 0;
  double log2_q = 0;
  OpCounts build;     // build_sl2_proxy
  OpCounts workload;  // psi and theta on fresh random inputs
  std::uint64_t total() const { return build.total() + workload.total(); }
};

inline OpCounts ReadCounts(const SimulatedField& k, const SimulatedGroup& g) {
  return {k.tally(), g.tally()};
}

inline void ResetCounts(const SimulatedField& k, const SimulatedGroup& g) {
  k.reset_tally();
  g.reset_tally();
}

// Builds an SL2 proxy over F_q and then evaluates psi and theta
// `evaluations` times each.
inline ScalingSample MeasureSl2Proxy(std::uint64_t q, std::uint64_t seed,
                                     int evaluations,
                                     ExponentMode mode = ExponentMode::kExact) {
  SimulatedGroup y(q, Flavor::kSl2, seed, mode);
  const auto bundle = AdjointBundle::Build(y);
  const auto& k = bundle.field();
  ScalingSample s;
  s.q = q;
  s.log2_q = std::log2(static_cast<double>(q));
  ResetCounts(k, y);
  Sl2Proxy<AdjointBundle> proxy(bundle, seed + 1);
  s.build = ReadCounts(k, y);
  Rng rng(seed + 2);
  std::vector<Mat2<FieldHandle>> xs;
  std::vector<GroupHandle> ys;
  for (int i = 0; i < evaluations; ++i) {
    xs.push_back(proxy.random_matrix(rng));
    ys.push_back(y.random(rng));
  }
  ResetCounts(k, y);
  for (int i = 0; i < evaluations; ++i) {
    proxy.to_group(xs[i]);
    proxy.to_matrix(ys[i]);
  }
  s.workload = ReadCounts(k, y);
  return s;
}

// Least-squares slope of log(total ops) against log(log2 q): the exponent d
// in ops ~ C (log q)^d.
inline double FitLogExponent(const std::vector<ScalingSample>& samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& s : samples) {
    const double x = std::log(s.log2_q);
    const double y = std::log(static_cast<double>(s.total()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
}

}  // namespace bbrecog

#endif  // BBRECOG_BENCH_HPP_
