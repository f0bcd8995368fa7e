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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tastenet/eeg.hpp"
#include "tastenet/ops.hpp"
#include "tastenet/tensor.hpp"

namespace tastenet::model {

enum class LayerKind : std::uint8_t { kConv = 0, kMaxPool = 1, kFlatten = 2, kLinear = 3 };

struct LayerSpec {
  std::string name;
  LayerKind kind = LayerKind::kConv;
  int channels = 0;  // conv: unscaled output channels
  Extent2 kernel;
  Extent2 stride;
  Extent2 padding;
  bool relu = false;
  bool attention = false;  // channel attention after this conv

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Temporal conv 1x37, spatial conv 3x1, five 3x3 convs with channel
// attention after conv1, conv2 and conv4, four max pools, then a linear head.
std::vector<LayerSpec> default_layers();

struct ModelSpec {
  bool attention_enabled = true;
  double width_mult = 1.0;
  std::size_t input_height = kChannels;
  std::size_t input_width = kTimepoints;
  int num_classes = kNumClasses;
  std::vector<LayerSpec> layers = default_layers();

  // Output channels of a conv layer after width scaling (at least 1).
  int scaled_channels(const LayerSpec& layer) const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct TraceEntry {
  std::string layer;
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Entry 0 is the input; then one entry per layer.
using ShapeTrace = std::vector<TraceEntry>;

// Closed-form output dims of every layer; ShapeError names the first layer
// whose output would be empty.
ShapeTrace shape_trace(const ModelSpec& spec);

// Scaled output channels of the conv layers, in order.
std::vector<int> channel_sequence(const ModelSpec& spec);

// Two independent length-3 kernels with scalar biases, one per pooled view.
struct AttentionParams {
  Tensor avg_weight;
  Tensor avg_bias;
  Tensor max_weight;
  Tensor max_bias;
};

// F * sigmoid(conv1d(avgpool(F)) + conv1d(maxpool(F))), gated per channel.
Tensor mv_channel_attention(const Tensor& features, const AttentionParams& params);

// Per-channel gate the attention block would apply, N x C.
Tensor attention_weights(const Tensor& features, const AttentionParams& params);

class Tscnn {
 public:
  // He-uniform weights from `seed`, zero biases.
  static Tscnn build(const ModelSpec& spec, std::uint64_t seed);

  // N x 1 x H x W input to N x num_classes logits. Records per-layer output
  // dims into `trace` when given.
  Tensor forward(const Tensor& batch, ShapeTrace* trace = nullptr) const;

  // Class probabilities without recording a graph.
  Tensor predict_proba(const Tensor& batch) const;

  // All trainable tensors in construction order.
  std::vector<Tensor> parameters() const;
  std::size_t parameter_count() const;
  void zero_grad();

  const ModelSpec& spec() const { return spec_; }

  std::vector<std::uint8_t> serialize() const;
  static Tscnn deserialize(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static Tscnn load(const std::string& path);

 private:
  struct Layer {
    LayerSpec spec;
    Tensor weight;
    Tensor bias;
    bool has_attention = false;
    AttentionParams attention;
  };

  ModelSpec spec_;
  std::vector<Layer> layers_;
};

// Stacks samples into an N x 1 x channels x timepoints tensor.
Tensor make_batch(std::span<const EegSample> samples);
Tensor make_batch(std::span<const DualLabelSample> samples, std::span<const std::size_t> indices);

}  // namespace tastenet::model
