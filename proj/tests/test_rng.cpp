// Copyright 2026 The TasteNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <set>

#include "tastenet/rng.hpp"

namespace tastenet {
namespace {

TEST_CASE("mix64 is deterministic and spreads nearby inputs") {
  CHECK(mix64(0) == mix64(0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix64(i));
  CHECK(seen.size() == 1000);
}

TEST_CASE("derived streams differ and do not depend on request order") {
  const std::uint64_t a = derive_seed(7, 3);
  const std::uint64_t b = derive_seed(7, 4);
  CHECK(a != b);
  CHECK(derive_seed(7, 3) == a);
  CHECK(derive_seed(8, 3) != a);
  Rng first(7, 3);
  Rng second(a);
  for (int i = 0; i < 10; ++i) CHECK(first.uniform() == second.uniform());
}

TEST_CASE("uniform draws stay in [0, 1) with mean near one half") {
  Rng rng(42);
  double total = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    total += u;
  }
  CHECK(total / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws have the requested moments") {
  Rng rng(5);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(3.0, 2.0);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.01));
  CHECK(s2 / n - mean * mean == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("index covers the range and rejects zero") {
  Rng rng(1);
  std::set<std::size_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(rng.index(5));
  CHECK(seen == std::set<std::size_t>{0, 1, 2, 3, 4});
  CHECK_THROWS(rng.index(0));
}

}  // namespace
}  // namespace tastenet
