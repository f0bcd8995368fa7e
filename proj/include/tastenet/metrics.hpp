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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tastenet::train {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes = 4);
  ConfusionMatrix(std::size_t classes, std::vector<std::int64_t> counts);

  void add(int truth, int predicted, std::int64_t count = 1);

  std::size_t classes() const { return classes_; }
  std::int64_t at(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * classes_ + predicted];
  }
  std::int64_t total() const;
  std::int64_t trace() const;
  std::int64_t row_sum(std::size_t truth) const;
  std::int64_t col_sum(std::size_t predicted) const;

 private:
  std::size_t classes_;
  std::vector<std::int64_t> counts_;
};

double accuracy(const ConfusionMatrix& m);

// Unweighted mean of per-class F1 over classes with at least one true
// member. A class never predicted scores 0.
double macro_f1(const ConfusionMatrix& m);

// (p_o - p_e) / (1 - p_e). Defined as 0 when p_e == 1, i.e. when truth and
// predictions are all one class.
double cohen_kappa(const ConfusionMatrix& m);

struct Metrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  double kappa = 0.0;
};

Metrics compute_metrics(const ConfusionMatrix& m);

}  // namespace tastenet::train
