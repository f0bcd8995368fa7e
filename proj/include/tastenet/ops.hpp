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

#include <cstddef>
#include <span>
#include <utility>

#include "tastenet/tensor.hpp"

namespace tastenet {

struct Extent2 {
  std::size_t h = 1;
  std::size_t w = 1;

  friend bool operator==(const Extent2&, const Extent2&) = default;
};

enum class Activation { kRelu, kSigmoid };

// Output extent of a sliding window; throws ShapeError when it would be < 1.
std::size_t window_output(std::size_t in, std::size_t kernel, std::size_t stride, std::size_t pad);

Tensor add(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor sum(const Tensor& a);
Tensor reshape(const Tensor& a, Shape shape);

// Elementwise max(0, x) or logistic. The relu derivative at 0 is 0.
Tensor pointwise(const Tensor& input, Activation kind);
inline Tensor relu(const Tensor& x) { return pointwise(x, Activation::kRelu); }
inline Tensor sigmoid(const Tensor& x) { return pointwise(x, Activation::kSigmoid); }

// Cross-correlation of N x Cin x H x W with Cout x Cin x kH x kW, zero padded.
Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, Extent2 stride,
              Extent2 padding);

// Max over kernel windows, trailing remainder dropped. Gradient goes to the
// first maximal cell in row-major order.
Tensor maxpool2d(const Tensor& input, Extent2 kernel, Extent2 stride);
inline Tensor maxpool2d(const Tensor& input, Extent2 kernel) {
  return maxpool2d(input, kernel, kernel);
}

// Length-preserving cross-correlation along the last axis of a {C} or {N, C}
// tensor. `weight` has odd length k and is zero padded by k / 2 on each side;
// `bias` holds one value.
Tensor conv1d(const Tensor& input, const Tensor& weight, const Tensor& bias);

// input N x D, weight K x D, bias K.
Tensor linear(const Tensor& input, const Tensor& weight, const Tensor& bias);

struct GlobalPool {
  Tensor avg;  // N x C
  Tensor max;  // N x C
};

// Spatial mean and max of N x C x H x W.
GlobalPool global_pool(const Tensor& features);

// features N x C x H x W scaled per (n, c) by weights N x C.
Tensor scale_channels(const Tensor& features, const Tensor& weights);

// Batch mean of -log softmax(logits)[label].
Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels);

// Batch mean of (1 - w_i) CE(logits_i, first_i) + w_i CE(logits_i, second_i).
Tensor mixed_cross_entropy(const Tensor& logits, std::span<const int> first,
                           std::span<const int> second, std::span<const double> second_weight);

// Row-wise softmax of N x K logits; not recorded.
Tensor softmax(const Tensor& logits);

}  // namespace tastenet
