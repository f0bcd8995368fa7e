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

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tastenet/ops.hpp"
#include "tastenet/rng.hpp"
#include "tastenet/tensor.hpp"

namespace tastenet::testing {

inline Tensor random_tensor(Rng& rng, Shape shape, bool requires_grad = true, double scale = 1.0) {
  std::vector<double> v(shape_numel(shape));
  for (double& x : v) x = rng.normal(0.0, scale);
  return Tensor(std::move(shape), std::move(v), requires_grad);
}

// Values at least `gap` from zero, so relu kinks stay out of a finite-difference stencil.
inline Tensor away_from_zero(Rng& rng, Shape shape, double gap = 1e-2) {
  std::vector<double> v(shape_numel(shape));
  for (double& x : v) {
    do {
      x = rng.normal();
    } while (std::abs(x) < gap);
  }
  return Tensor(std::move(shape), std::move(v), true);
}

// Distinct values spaced by `gap` in random order, so pooling windows have a clear winner.
inline Tensor distinct_values(Rng& rng, Shape shape, double gap = 1e-2) {
  std::vector<double> v(shape_numel(shape));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = gap * static_cast<double>(i);
  std::shuffle(v.begin(), v.end(), rng.engine());
  return Tensor(std::move(shape), std::move(v), true);
}

// ||a - b|| / max(||a|| + ||b||, tiny).
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::max(std::sqrt(na) + std::sqrt(nb), 1e-12);
  return std::sqrt(diff) / denom;
}

// Worst relative error between backprop and central differences over all
// `inputs`, for the scalar loss sum(f(inputs) * probe) with a fixed random probe.
inline double gradient_error(const std::function<Tensor(const std::vector<Tensor>&)>& f,
                             std::vector<Tensor> inputs, Rng& rng, double step = 1e-5) {
  Tensor out = f(inputs);
  Tensor probe = random_tensor(rng, out.shape(), false);
  auto loss_of = [&] { return sum(mul(f(inputs), probe)); };
  for (Tensor& t : inputs) t.zero_grad();
  backward(loss_of());
  double worst = 0.0;
  for (Tensor& t : inputs) {
    if (!t.requires_grad()) continue;
    std::vector<double> analytic(t.grad().begin(), t.grad().end());
    std::vector<double> numeric(t.numel());
    auto values = t.mutable_data();
    NoGradGuard no_grad;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + step;
      const double up = loss_of().item();
      values[i] = saved - step;
      const double down = loss_of().item();
      values[i] = saved;
      numeric[i] = (up - down) / (2.0 * step);
    }
    worst = std::max(worst, relative_error(analytic, numeric));
  }
  return worst;
}

}  // namespace tastenet::testing
