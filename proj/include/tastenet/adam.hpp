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

#include <cstdint>
#include <span>
#include <vector>

#include "tastenet/tensor.hpp"

namespace tastenet {

struct AdamOptions {
  double lr = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Coupled L2: added to the gradient before the moment update.
  double weight_decay = 0.0;
};

struct AdamState {
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
  std::int64_t step = 0;
};

// One bias-corrected Adam update of `params` from their accumulated grads.
// `state` is sized on first use and must keep matching `params` afterwards.
void adam_step(std::span<Tensor> params, AdamState& state, const AdamOptions& options);

class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamOptions options);

  void step() { adam_step(params_, state_, options_); }
  void zero_grad();

  const AdamState& state() const { return state_; }
  const AdamOptions& options() const { return options_; }

 private:
  std::vector<Tensor> params_;
  AdamOptions options_;
  AdamState state_;
};

}  // namespace tastenet
