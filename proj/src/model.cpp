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

#include "tastenet/model.hpp"

#include <cmath>
#include <cstring>

#include "tastenet/binary_io.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/rng.hpp"

namespace tastenet::model {

namespace {

constexpr char kMagic[4] = {'T', 'S', 'N', 'N'};
constexpr std::uint32_t kVersion = 1;

LayerSpec conv(std::string name, int channels, Extent2 kernel, Extent2 padding, bool relu,
               bool attention) {
  return LayerSpec{std::move(name), LayerKind::kConv, channels, kernel, {1, 1}, padding, relu,
                   attention};
}

LayerSpec pool(std::string name, Extent2 kernel) {
  return LayerSpec{std::move(name), LayerKind::kMaxPool, 0, kernel, kernel, {0, 0}, false, false};
}

Tensor he_uniform(Shape shape, std::size_t fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  std::vector<double> values(shape_numel(shape));
  for (double& v : values) v = rng.uniform(-bound, bound);
  return Tensor(std::move(shape), std::move(values), true);
}

TraceEntry entry_of(const std::string& name, const Tensor& t) {
  if (t.rank() == 4) return {name, t.dim(1), t.dim(2), t.dim(3)};
  return {name, t.dim(1), 1, 1};
}

}  // namespace

std::vector<LayerSpec> default_layers() {
  return {
      conv("temporal_conv", 16, {1, 37}, {2, 2}, true, false),
      conv("spatial_conv", 32, {3, 1}, {1, 1}, false, false),
      conv("conv1", 64, {3, 3}, {1, 1}, false, true),
      pool("pool1", {2, 4}),
      conv("conv2", 128, {3, 3}, {1, 1}, true, true),
      pool("pool2", {2, 4}),
      conv("conv3", 128, {3, 3}, {1, 1}, true, false),
      pool("pool3", {2, 2}),
      conv("conv4", 256, {3, 3}, {1, 1}, true, true),
      pool("pool4", {2, 2}),
      conv("conv5", 256, {3, 3}, {1, 1}, true, false),
      LayerSpec{"flatten", LayerKind::kFlatten, 0, {}, {}, {0, 0}, false, false},
      LayerSpec{"fc", LayerKind::kLinear, 0, {}, {}, {0, 0}, false, false},
  };
}

int ModelSpec::scaled_channels(const LayerSpec& layer) const {
  const long scaled = std::lround(static_cast<double>(layer.channels) * width_mult);
  return static_cast<int>(std::max(1L, scaled));
}

ShapeTrace shape_trace(const ModelSpec& spec) {
  if (!(spec.width_mult > 0.0)) throw InputError("width_mult must be positive");
  ShapeTrace trace;
  TraceEntry cur{"input", 1, spec.input_height, spec.input_width};
  trace.push_back(cur);
  for (const LayerSpec& layer : spec.layers) {
    try {
      switch (layer.kind) {
        case LayerKind::kConv:
          cur = {layer.name, static_cast<std::size_t>(spec.scaled_channels(layer)),
                 window_output(cur.height, layer.kernel.h, layer.stride.h, layer.padding.h),
                 window_output(cur.width, layer.kernel.w, layer.stride.w, layer.padding.w)};
          break;
        case LayerKind::kMaxPool:
          cur = {layer.name, cur.channels,
                 window_output(cur.height, layer.kernel.h, layer.stride.h, 0),
                 window_output(cur.width, layer.kernel.w, layer.stride.w, 0)};
          break;
        case LayerKind::kFlatten:
          cur = {layer.name, cur.channels * cur.height * cur.width, 1, 1};
          break;
        case LayerKind::kLinear:
          cur = {layer.name, static_cast<std::size_t>(spec.num_classes), 1, 1};
          break;
      }
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + layer.name + ": " + e.what());
    }
    trace.push_back(cur);
  }
  return trace;
}

std::vector<int> channel_sequence(const ModelSpec& spec) {
  std::vector<int> seq;
  for (const LayerSpec& layer : spec.layers) {
    if (layer.kind == LayerKind::kConv) seq.push_back(spec.scaled_channels(layer));
  }
  return seq;
}

Tensor attention_weights(const Tensor& features, const AttentionParams& params) {
  GlobalPool pooled = global_pool(features);
  Tensor from_avg = conv1d(pooled.avg, params.avg_weight, params.avg_bias);
  Tensor from_max = conv1d(pooled.max, params.max_weight, params.max_bias);
  return sigmoid(add(from_avg, from_max));
}

Tensor mv_channel_attention(const Tensor& features, const AttentionParams& params) {
  return scale_channels(features, attention_weights(features, params));
}

Tscnn Tscnn::build(const ModelSpec& spec, std::uint64_t seed) {
  const ShapeTrace trace = shape_trace(spec);
  Tscnn model;
  model.spec_ = spec;
  Rng rng(seed);
  std::size_t in_channels = 1;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const LayerSpec& ls = spec.layers[i];
    Layer layer{ls, {}, {}, false, {}};
    if (ls.kind == LayerKind::kConv) {
      const auto out = static_cast<std::size_t>(spec.scaled_channels(ls));
      const std::size_t fan_in = in_channels * ls.kernel.h * ls.kernel.w;
      layer.weight = he_uniform({out, in_channels, ls.kernel.h, ls.kernel.w}, fan_in, rng);
      layer.bias = Tensor({out}, true);
      if (ls.attention && spec.attention_enabled) {
        layer.has_attention = true;
        layer.attention.avg_weight = he_uniform({3}, 3, rng);
        layer.attention.avg_bias = Tensor({1}, true);
        layer.attention.max_weight = he_uniform({3}, 3, rng);
        layer.attention.max_bias = Tensor({1}, true);
      }
      in_channels = out;
    } else if (ls.kind == LayerKind::kLinear) {
      const std::size_t in_features = trace[i].channels * trace[i].height * trace[i].width;
      const auto out = static_cast<std::size_t>(spec.num_classes);
      layer.weight = he_uniform({out, in_features}, in_features, rng);
      layer.bias = Tensor({out}, true);
    }
    model.layers_.push_back(std::move(layer));
  }
  return model;
}

Tensor Tscnn::forward(const Tensor& batch, ShapeTrace* trace) const {
  if (batch.rank() != 4) {
    throw ShapeError("layer " + (layers_.empty() ? std::string("input") : layers_[0].spec.name) +
                     ": input must be N x 1 x H x W, got " + shape_string(batch.shape()));
  }
  if (trace) {
    trace->clear();
    trace->push_back(entry_of("input", batch));
  }
  Tensor x = batch;
  for (const Layer& layer : layers_) {
    const LayerSpec& ls = layer.spec;
    try {
      switch (ls.kind) {
        case LayerKind::kConv:
          x = conv2d(x, layer.weight, layer.bias, ls.stride, ls.padding);
          if (ls.relu) x = relu(x);
          if (layer.has_attention) x = mv_channel_attention(x, layer.attention);
          break;
        case LayerKind::kMaxPool:
          x = maxpool2d(x, ls.kernel, ls.stride);
          break;
        case LayerKind::kFlatten:
          x = reshape(x, {x.dim(0), x.numel() / x.dim(0)});
          break;
        case LayerKind::kLinear:
          x = linear(x, layer.weight, layer.bias);
          break;
      }
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + ls.name + ": " + e.what());
    }
    if (trace) trace->push_back(entry_of(ls.name, x));
  }
  return x;
}

Tensor Tscnn::predict_proba(const Tensor& batch) const {
  NoGradGuard guard;
  return softmax(forward(batch));
}

std::vector<Tensor> Tscnn::parameters() const {
  std::vector<Tensor> params;
  for (const Layer& layer : layers_) {
    if (layer.weight.defined()) {
      params.push_back(layer.weight);
      params.push_back(layer.bias);
    }
    if (layer.has_attention) {
      params.push_back(layer.attention.avg_weight);
      params.push_back(layer.attention.avg_bias);
      params.push_back(layer.attention.max_weight);
      params.push_back(layer.attention.max_bias);
    }
  }
  return params;
}

std::size_t Tscnn::parameter_count() const {
  std::size_t n = 0;
  for (const Tensor& p : parameters()) n += p.numel();
  return n;
}

void Tscnn::zero_grad() {
  for (Tensor& p : parameters()) p.zero_grad();
}

std::vector<std::uint8_t> Tscnn::serialize() const {
  std::vector<std::uint8_t> out;
  binary::put_bytes(out, std::string_view(kMagic, 4));
  binary::put<std::uint32_t>(out, kVersion);
  binary::put<std::uint8_t>(out, spec_.attention_enabled ? 1 : 0);
  binary::put<double>(out, spec_.width_mult);
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(spec_.input_height));
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(spec_.input_width));
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(spec_.num_classes));
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(spec_.layers.size()));
  for (const LayerSpec& l : spec_.layers) {
    binary::put<std::uint8_t>(out, static_cast<std::uint8_t>(l.kind));
    binary::put<std::uint8_t>(out, l.relu ? 1 : 0);
    binary::put<std::uint8_t>(out, l.attention ? 1 : 0);
    binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(l.channels));
    for (std::size_t v : {l.kernel.h, l.kernel.w, l.stride.h, l.stride.w, l.padding.h,
                          l.padding.w}) {
      binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(v));
    }
    binary::put<std::uint16_t>(out, static_cast<std::uint16_t>(l.name.size()));
    binary::put_bytes(out, l.name);
  }
  const std::vector<Tensor> params = parameters();
  binary::put<std::uint64_t>(out, parameter_count());
  for (const Tensor& p : params) {
    for (double v : p.data()) binary::put<double>(out, v);
  }
  return out;
}

Tscnn Tscnn::deserialize(const std::vector<std::uint8_t>& bytes) {
  binary::Reader in(bytes);
  if (in.get_bytes(4, "magic") != std::string_view(kMagic, 4)) {
    throw FormatError(0, "not a TSNN checkpoint (bad magic)");
  }
  const std::size_t version_at = in.offset();
  if (in.get<std::uint32_t>("version") != kVersion) {
    throw FormatError(version_at, "unsupported checkpoint version");
  }
  ModelSpec spec;
  spec.attention_enabled = in.get<std::uint8_t>("attention flag") != 0;
  const std::size_t width_at = in.offset();
  spec.width_mult = in.get<double>("width_mult");
  if (!(spec.width_mult > 0.0) || !std::isfinite(spec.width_mult)) {
    throw FormatError(width_at, "width_mult must be positive");
  }
  spec.input_height = in.get<std::uint32_t>("input height");
  spec.input_width = in.get<std::uint32_t>("input width");
  spec.num_classes = static_cast<int>(in.get<std::uint32_t>("class count"));
  const auto n_layers = in.get<std::uint32_t>("layer count");
  spec.layers.clear();
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    LayerSpec l;
    const std::size_t kind_at = in.offset();
    const auto kind = in.get<std::uint8_t>("layer kind");
    if (kind > static_cast<std::uint8_t>(LayerKind::kLinear)) {
      throw FormatError(kind_at, "unknown layer kind " + std::to_string(kind));
    }
    l.kind = static_cast<LayerKind>(kind);
    l.relu = in.get<std::uint8_t>("relu flag") != 0;
    l.attention = in.get<std::uint8_t>("attention flag") != 0;
    l.channels = static_cast<int>(in.get<std::uint32_t>("channels"));
    l.kernel.h = in.get<std::uint32_t>("kernel");
    l.kernel.w = in.get<std::uint32_t>("kernel");
    l.stride.h = in.get<std::uint32_t>("stride");
    l.stride.w = in.get<std::uint32_t>("stride");
    l.padding.h = in.get<std::uint32_t>("padding");
    l.padding.w = in.get<std::uint32_t>("padding");
    const auto name_len = in.get<std::uint16_t>("name length");
    l.name = in.get_bytes(name_len, "layer name");
    spec.layers.push_back(std::move(l));
  }
  const std::size_t count_at = in.offset();
  const auto n_values = in.get<std::uint64_t>("parameter count");
  Tscnn model;
  try {
    model = build(spec, 0);
  } catch (const ShapeError& e) {
    throw FormatError(count_at, std::string("checkpoint spec is inconsistent: ") + e.what());
  }
  if (n_values != model.parameter_count()) {
    throw FormatError(count_at, "checkpoint stores " + std::to_string(n_values) +
                                    " parameters, spec needs " +
                                    std::to_string(model.parameter_count()));
  }
  in.require(n_values * sizeof(double), "parameters");
  for (Tensor& p : model.parameters()) {
    for (double& v : p.mutable_data()) v = in.get<double>("parameters");
  }
  if (in.remaining() != 0) throw FormatError(in.offset(), "trailing bytes after parameters");
  return model;
}

void Tscnn::save(const std::string& path) const { binary::write_file(path, serialize()); }

Tscnn Tscnn::load(const std::string& path) { return deserialize(binary::read_file(path)); }

Tensor make_batch(std::span<const EegSample> samples) {
  if (samples.empty()) throw InputError("make_batch: no samples");
  const std::size_t c = samples[0].channels;
  const std::size_t t = samples[0].timepoints;
  std::vector<double> values;
  values.reserve(samples.size() * c * t);
  for (const EegSample& s : samples) {
    if (s.channels != c || s.timepoints != t || s.data.size() != c * t) {
      throw ShapeError("make_batch: samples differ in shape");
    }
    values.insert(values.end(), s.data.begin(), s.data.end());
  }
  return Tensor({samples.size(), 1, c, t}, std::move(values));
}

Tensor make_batch(std::span<const DualLabelSample> samples, std::span<const std::size_t> indices) {
  if (indices.empty()) throw InputError("make_batch: no samples");
  const std::size_t c = samples[indices[0]].channels;
  const std::size_t t = samples[indices[0]].timepoints;
  std::vector<double> values;
  values.reserve(indices.size() * c * t);
  for (std::size_t i : indices) {
    const DualLabelSample& s = samples[i];
    if (s.channels != c || s.timepoints != t || s.data.size() != c * t) {
      throw ShapeError("make_batch: samples differ in shape");
    }
    values.insert(values.end(), s.data.begin(), s.data.end());
  }
  return Tensor({indices.size(), 1, c, t}, std::move(values));
}

}  // namespace tastenet::model
