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

#include "tastenet/adam.hpp"

#include <cmath>

#include "tastenet/errors.hpp"

namespace tastenet {

void adam_step(std::span<Tensor> params, AdamState& state, const AdamOptions& options) {
  if (!(options.lr > 0.0)) throw InputError("adam: learning rate must be positive");
  if (state.first_moment.empty() && state.step == 0) {
    for (const Tensor& p : params) {
      state.first_moment.emplace_back(p.numel(), 0.0);
      state.second_moment.emplace_back(p.numel(), 0.0);
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw InputError("adam: state tracks " + std::to_string(state.first_moment.size()) +
                     " parameters, step got " + std::to_string(params.size()));
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(options.beta1, t);
  const double correction2 = 1.0 - std::pow(options.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = params[i];
    std::vector<double>& m = state.first_moment[i];
    std::vector<double>& v = state.second_moment[i];
    if (m.size() != p.numel()) throw InputError("adam: moment buffer does not match parameter");
    if (!p.requires_grad()) continue;
    auto value = p.mutable_data();
    auto grad = p.grad();
    for (std::size_t j = 0; j < value.size(); ++j) {
      const double g = grad[j] + options.weight_decay * value[j];
      m[j] = options.beta1 * m[j] + (1.0 - options.beta1) * g;
      v[j] = options.beta2 * v[j] + (1.0 - options.beta2) * g * g;
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      value[j] -= options.lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
  }
}

Adam::Adam(std::vector<Tensor> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {}

void Adam::zero_grad() {
  for (Tensor& p : params_) p.zero_grad();
}

}  // namespace tastenet
