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

#ifndef BBRECOG_VERIFY_HPP_
#define BBRECOG_VERIFY_HPP_

// Black-box verification of a structural proxy: round trips in both
// directions and the homomorphism property of both maps, on random samples.

#include <cstdint>

#include "bbrecog/field.hpp"
#include "bbrecog/matrix.hpp"

namespace bbrecog {

struct ProxyCheckCounts {
  std::uint64_t round_trip_checks = 0;
  std::uint64_t round_trip_failures = 0;
  std::uint64_t homomorphism_checks = 0;
  std::uint64_t homomorphism_failures = 0;

  std::uint64_t failures() const {
    return round_trip_failures + homomorphism_failures;
  }
};

// Each sample runs two round trips (matrix side, group side) and two
// homomorphism checks (forward map, backward map).
template <class Proxy>
ProxyCheckCounts CheckProxy(Proxy& proxy, std::uint64_t samples, Rng& rng) {
  const auto& k = proxy.field();
  const auto& g = proxy.group();
  ProxyCheckCounts out;
  auto tally = [](bool ok, std::uint64_t& checks, std::uint64_t& failures) {
    ++checks;
    if (!ok) ++failures;
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto x = proxy.random_matrix(rng);
    const auto x2 = proxy.random_matrix(rng);
    const auto y = g.random(rng);
    const auto y2 = g.random(rng);

    tally(proxy.same_matrix(proxy.to_matrix(proxy.to_group(x)), x),
          out.round_trip_checks, out.round_trip_failures);
    tally(g.eq(proxy.to_group(proxy.to_matrix(y)), y), out.round_trip_checks,
          out.round_trip_failures);

    tally(g.eq(proxy.to_group(Mul(k, x, x2)),
               g.mul(proxy.to_group(x), proxy.to_group(x2))),
          out.homomorphism_checks, out.homomorphism_failures);
    tally(proxy.same_matrix(proxy.to_matrix(g.mul(y, y2)),
                            Mul(k, proxy.to_matrix(y), proxy.to_matrix(y2))),
          out.homomorphism_checks, out.homomorphism_failures);
  }
  return out;
}

}  // namespace bbrecog

#endif  // BBRECOG_VERIFY_HPP_
