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

#include "oracles.hpp"
#include "tastenet/errors.hpp"

namespace tastenet {
namespace {

using train::ConfusionMatrix;

TEST_CASE("metrics agree with the brute-force oracle on random matrices") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t classes = 2 + rng.index(4);
    const ConfusionMatrix cm = testing::random_confusion(rng, classes);
    const auto expect = testing::brute_force_metrics(testing::expand(cm), static_cast<int>(classes));
    const auto got = train::compute_metrics(cm);
    CHECK(std::abs(got.accuracy - expect.accuracy) <= 1e-12);
    CHECK(std::abs(got.f1 - expect.macro_f1) <= 1e-12);
    CHECK(std::abs(got.kappa - expect.kappa) <= 1e-12);
    CHECK(got.kappa >= -1.0);
    CHECK(got.kappa <= 1.0);
  }
}

TEST_CASE("two-class reference matrix gives accuracy 0.7 and kappa 0.4") {
  const ConfusionMatrix cm(2, {40, 10, 20, 30});
  CHECK(train::accuracy(cm) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(std::abs(train::cohen_kappa(cm) - 0.4) < 1e-12);
}

TEST_CASE("a single-class predictor on balanced truth has kappa 0") {
  ConfusionMatrix cm(4);
  for (int t = 0; t < 4; ++t) cm.add(t, 2, 25);
  CHECK(train::accuracy(cm) == 0.25);
  CHECK(std::abs(train::cohen_kappa(cm)) < 1e-12);
}

TEST_CASE("perfect predictions score one everywhere") {
  ConfusionMatrix cm(4);
  for (int t = 0; t < 4; ++t) cm.add(t, t, 7);
  const auto m = train::compute_metrics(cm);
  CHECK(m.accuracy == 1.0);
  CHECK(m.f1 == 1.0);
  CHECK(m.kappa == 1.0);
}

TEST_CASE("kappa is one on a diagonal matrix and zero when chance agreement is certain") {
  ConfusionMatrix diagonal(3);
  diagonal.add(0, 0, 5);
  diagonal.add(1, 1, 2);
  diagonal.add(2, 2, 9);
  CHECK(train::cohen_kappa(diagonal) == doctest::Approx(1.0).epsilon(1e-15));
  ConfusionMatrix off(3);
  off.add(0, 0, 5);
  off.add(1, 2, 1);
  CHECK(train::cohen_kappa(off) < 1.0);
  ConfusionMatrix one_class(3);
  one_class.add(1, 1, 9);
  CHECK(train::cohen_kappa(one_class) == 0.0);
}

TEST_CASE("classes absent from the truth are skipped by macro-F1") {
  ConfusionMatrix cm(3);
  cm.add(0, 0, 4);
  cm.add(1, 1, 4);
  cm.add(1, 2, 1);
  // Class 2 has no true members: F1 averages classes 0 and 1 only.
  const double f1_1 = 2.0 * 4 / (2.0 * 4 + 0 + 1);
  CHECK(train::macro_f1(cm) == doctest::Approx((1.0 + f1_1) / 2.0).epsilon(1e-15));
}

TEST_CASE("confusion matrix bookkeeping and validation") {
  ConfusionMatrix cm(3);
  cm.add(0, 1);
  cm.add(2, 2, 3);
  CHECK(cm.total() == 4);
  CHECK(cm.trace() == 3);
  CHECK(cm.row_sum(2) == 3);
  CHECK(cm.col_sum(1) == 1);
  CHECK_THROWS(cm.add(3, 0));
  CHECK_THROWS(cm.add(0, -1));
  CHECK_THROWS(ConfusionMatrix(2, {1, 2, 3}));
  CHECK_THROWS_AS(train::accuracy(ConfusionMatrix(4)), InputError);
}

}  // namespace
}  // namespace tastenet
