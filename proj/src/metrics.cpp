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

#include "tastenet/metrics.hpp"

#include <string>

#include "tastenet/errors.hpp"

namespace tastenet::train {

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), counts_(classes * classes, 0) {}

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<std::int64_t> counts)
    : classes_(classes), counts_(std::move(counts)) {
  if (counts_.size() != classes * classes) {
    throw InputError("confusion matrix needs " + std::to_string(classes * classes) + " counts");
  }
  for (std::int64_t c : counts_) {
    if (c < 0) throw InputError("confusion matrix counts must be non-negative");
  }
}

void ConfusionMatrix::add(int truth, int predicted, std::int64_t count) {
  if (truth < 0 || predicted < 0 || static_cast<std::size_t>(truth) >= classes_ ||
      static_cast<std::size_t>(predicted) >= classes_) {
    throw InputError("confusion matrix: class index out of range");
  }
  counts_[static_cast<std::size_t>(truth) * classes_ + static_cast<std::size_t>(predicted)] +=
      count;
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t n = 0;
  for (std::int64_t c : counts_) n += c;
  return n;
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t n = 0;
  for (std::size_t k = 0; k < classes_; ++k) n += at(k, k);
  return n;
}

std::int64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::int64_t n = 0;
  for (std::size_t k = 0; k < classes_; ++k) n += at(truth, k);
  return n;
}

std::int64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::int64_t n = 0;
  for (std::size_t k = 0; k < classes_; ++k) n += at(k, predicted);
  return n;
}

double accuracy(const ConfusionMatrix& m) {
  const std::int64_t total = m.total();
  if (total == 0) throw InputError("metrics of an empty confusion matrix");
  return static_cast<double>(m.trace()) / static_cast<double>(total);
}

double macro_f1(const ConfusionMatrix& m) {
  if (m.total() == 0) throw InputError("metrics of an empty confusion matrix");
  double sum = 0.0;
  int counted = 0;
  for (std::size_t k = 0; k < m.classes(); ++k) {
    const std::int64_t actual = m.row_sum(k);
    if (actual == 0) continue;
    const std::int64_t predicted = m.col_sum(k);
    const auto tp = static_cast<double>(m.at(k, k));
    // F1 = 2TP / (2TP + FP + FN) = 2TP / (predicted + actual).
    sum += 2.0 * tp / static_cast<double>(predicted + actual);
    ++counted;
  }
  return sum / counted;
}

double cohen_kappa(const ConfusionMatrix& m) {
  const auto total = static_cast<double>(m.total());
  if (total == 0) throw InputError("metrics of an empty confusion matrix");
  const double observed = static_cast<double>(m.trace()) / total;
  double expected = 0.0;
  for (std::size_t k = 0; k < m.classes(); ++k) {
    expected += (static_cast<double>(m.row_sum(k)) / total) *
                (static_cast<double>(m.col_sum(k)) / total);
  }
  if (expected >= 1.0) return 0.0;
  return (observed - expected) / (1.0 - expected);
}

Metrics compute_metrics(const ConfusionMatrix& m) {
  return Metrics{accuracy(m), macro_f1(m), cohen_kappa(m)};
}

}  // namespace tastenet::train
