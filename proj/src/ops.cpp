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

#include "tastenet/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "tastenet/errors.hpp"

namespace tastenet {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

void require_rank(const Tensor& t, std::size_t rank, const char* op, const char* what) {
  if (t.rank() != rank) {
    throw ShapeError(std::string(op) + ": " + what + " must have rank " + std::to_string(rank) +
                     ", got " + shape_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                     shape_string(b.shape()));
  }
}

// Geometry of one 2-D sliding window operation.
struct ConvGeometry {
  std::size_t channels, in_h, in_w, k_h, k_w, stride_h, stride_w, pad_h, pad_w, out_h, out_w;

  std::size_t rows() const { return channels * k_h * k_w; }
  std::size_t cols() const { return out_h * out_w; }
};

// Output columns [lo, hi) whose kernel column `kj` lands inside the image.
std::pair<std::size_t, std::size_t> valid_columns(const ConvGeometry& g, std::size_t kj) {
  std::size_t lo = 0;
  if (kj < g.pad_w) lo = (g.pad_w - kj + g.stride_w - 1) / g.stride_w;
  std::size_t hi = 0;
  if (g.in_w + g.pad_w > kj) hi = (g.in_w + g.pad_w - kj - 1) / g.stride_w + 1;
  hi = std::min(hi, g.out_w);
  return {std::min(lo, hi), hi};
}

// Output rows per im2col band, sized so a band's column matrix stays in cache.
std::size_t band_rows(const ConvGeometry& g) {
  constexpr std::size_t kBandValues = 32768;
  return std::clamp<std::size_t>(kBandValues / (g.rows() * g.out_w), 1, g.out_h);
}

// Unfolds output rows [oh0, oh1) of one C x H x W image into a (C*kH*kW) x (oH*oW) column matrix.
void im2col(const double* image, const ConvGeometry& g, std::size_t oh0, std::size_t oh1,
            double* col) {
  const std::size_t cols = (oh1 - oh0) * g.out_w;
  for (std::size_t c = 0; c < g.channels; ++c) {
    const double* plane = image + c * g.in_h * g.in_w;
    for (std::size_t ki = 0; ki < g.k_h; ++ki) {
      for (std::size_t kj = 0; kj < g.k_w; ++kj) {
        double* row = col + ((c * g.k_h + ki) * g.k_w + kj) * cols;
        for (std::size_t oh = oh0; oh < oh1; ++oh) {
          double* dst = row + (oh - oh0) * g.out_w;
          const std::ptrdiff_t ih = static_cast<std::ptrdiff_t>(oh * g.stride_h + ki) -
                                    static_cast<std::ptrdiff_t>(g.pad_h);
          if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(g.in_h)) {
            std::fill(dst, dst + g.out_w, 0.0);
            continue;
          }
          const double* src = plane + ih * g.in_w;
          const auto [lo, hi] = valid_columns(g, kj);
          std::fill(dst, dst + lo, 0.0);
          for (std::size_t ow = lo; ow < hi; ++ow) dst[ow] = src[ow * g.stride_w + kj - g.pad_w];
          std::fill(dst + hi, dst + g.out_w, 0.0);
        }
      }
    }
  }
}

// Adjoint of im2col: scatters column entries back onto the image, summing.
void col2im_add(const double* col, const ConvGeometry& g, std::size_t oh0, std::size_t oh1,
                double* image) {
  const std::size_t cols = (oh1 - oh0) * g.out_w;
  for (std::size_t c = 0; c < g.channels; ++c) {
    double* plane = image + c * g.in_h * g.in_w;
    for (std::size_t ki = 0; ki < g.k_h; ++ki) {
      for (std::size_t kj = 0; kj < g.k_w; ++kj) {
        const double* row = col + ((c * g.k_h + ki) * g.k_w + kj) * cols;
        for (std::size_t oh = oh0; oh < oh1; ++oh) {
          const std::ptrdiff_t ih = static_cast<std::ptrdiff_t>(oh * g.stride_h + ki) -
                                    static_cast<std::ptrdiff_t>(g.pad_h);
          if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(g.in_h)) continue;
          const double* src = row + (oh - oh0) * g.out_w;
          double* dst = plane + ih * g.in_w;
          const auto [lo, hi] = valid_columns(g, kj);
          for (std::size_t ow = lo; ow < hi; ++ow) dst[ow * g.stride_w + kj - g.pad_w] += src[ow];
        }
      }
    }
  }
}

void check_labels(std::span<const int> labels, std::size_t batch, std::size_t classes,
                  const char* op) {
  if (labels.size() != batch) {
    throw InputError(std::string(op) + ": " + std::to_string(labels.size()) +
                     " labels for a batch of " + std::to_string(batch));
  }
  for (int label : labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw InputError(std::string(op) + ": label " + std::to_string(label) +
                       " outside [0, " + std::to_string(classes) + ")");
    }
  }
}

}  // namespace

std::size_t window_output(std::size_t in, std::size_t kernel, std::size_t stride,
                          std::size_t pad) {
  if (stride == 0 || kernel == 0) throw ShapeError("kernel and stride must be positive");
  if (kernel > in + 2 * pad) {
    throw ShapeError("kernel " + std::to_string(kernel) + " exceeds padded extent " +
                     std::to_string(in + 2 * pad));
  }
  return (in + 2 * pad - kernel) / stride + 1;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.numel());
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + y[i];
  return make_result(a.shape(), std::move(out), "add", {a, b}, [](detail::Node& self) {
    for (auto& in : self.inputs) {
      if (!in->requires_grad) continue;
      for (std::size_t i = 0; i < self.grad.size(); ++i) in->grad[i] += self.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(a.numel());
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[i];
  return make_result(a.shape(), std::move(out), "mul", {a, b}, [](detail::Node& self) {
    auto& lhs = *self.inputs[0];
    auto& rhs = *self.inputs[1];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (lhs.requires_grad) lhs.grad[i] += self.grad[i] * rhs.value[i];
      if (rhs.requires_grad) rhs.grad[i] += self.grad[i] * lhs.value[i];
    }
  });
}

Tensor scale(const Tensor& a, double factor) {
  std::vector<double> out(a.data().begin(), a.data().end());
  for (double& v : out) v *= factor;
  return make_result(a.shape(), std::move(out), "scale", {a}, [factor](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) in.grad[i] += factor * self.grad[i];
  });
}

Tensor sum(const Tensor& a) {
  double total = 0.0;
  for (double v : a.data()) total += v;
  return make_result(Shape{1}, {total}, "sum", {a}, [](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (double& g : in.grad) g += self.grad[0];
  });
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (shape_numel(shape) != a.numel()) {
    throw ShapeError("reshape: cannot view " + shape_string(a.shape()) + " as " +
                     shape_string(shape));
  }
  std::vector<double> out(a.data().begin(), a.data().end());
  return make_result(std::move(shape), std::move(out), "reshape", {a}, [](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) in.grad[i] += self.grad[i];
  });
}

Tensor pointwise(const Tensor& input, Activation kind) {
  auto x = input.data();
  std::vector<double> out(x.size());
  if (kind == Activation::kRelu) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
    return make_result(input.shape(), std::move(out), "relu", {input}, [](detail::Node& self) {
      auto& in = *self.inputs[0];
      for (std::size_t i = 0; i < self.grad.size(); ++i) {
        if (in.value[i] > 0.0) in.grad[i] += self.grad[i];
      }
    });
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Branches keep exp() from overflowing for large |x|.
    out[i] = x[i] >= 0.0 ? 1.0 / (1.0 + std::exp(-x[i])) : std::exp(x[i]) / (1.0 + std::exp(x[i]));
  }
  return make_result(input.shape(), std::move(out), "sigmoid", {input}, [](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      const double s = self.value[i];
      in.grad[i] += self.grad[i] * s * (1.0 - s);
    }
  });
}

Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, Extent2 stride,
              Extent2 padding) {
  require_rank(input, 4, "conv2d", "input");
  require_rank(weight, 4, "conv2d", "weight");
  require_rank(bias, 1, "conv2d", "bias");
  const std::size_t batch = input.dim(0);
  const std::size_t out_channels = weight.dim(0);
  if (weight.dim(1) != input.dim(1)) {
    throw ShapeError("conv2d: weight expects " + std::to_string(weight.dim(1)) +
                     " input channels, input " + shape_string(input.shape()) + " has " +
                     std::to_string(input.dim(1)));
  }
  if (bias.dim(0) != out_channels) {
    throw ShapeError("conv2d: bias has " + std::to_string(bias.dim(0)) + " entries for " +
                     std::to_string(out_channels) + " output channels");
  }
  ConvGeometry g{input.dim(1), input.dim(2), input.dim(3), weight.dim(2), weight.dim(3),
                 stride.h,     stride.w,     padding.h,    padding.w,     0,             0};
  try {
    g.out_h = window_output(g.in_h, g.k_h, g.stride_h, g.pad_h);
    g.out_w = window_output(g.in_w, g.k_w, g.stride_w, g.pad_w);
  } catch (const ShapeError& e) {
    throw ShapeError(std::string("conv2d: input ") + shape_string(input.shape()) + ": " + e.what());
  }

  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  const std::size_t in_stride = g.channels * g.in_h * g.in_w;
  const std::size_t out_stride = out_channels * cols;
  std::vector<double> out(batch * out_stride);
  const std::size_t band = band_rows(g);
  std::vector<double> col(rows * band * g.out_w);
  ConstMatrixMap w(weight.data().data(), out_channels, rows);
  auto b = bias.data();
  for (std::size_t n = 0; n < batch; ++n) {
    MatrixMap y(out.data() + n * out_stride, out_channels, cols);
    for (std::size_t oh0 = 0; oh0 < g.out_h; oh0 += band) {
      const std::size_t oh1 = std::min(g.out_h, oh0 + band);
      const std::size_t width = (oh1 - oh0) * g.out_w;
      im2col(input.data().data() + n * in_stride, g, oh0, oh1, col.data());
      y.middleCols(oh0 * g.out_w, width).noalias() =
          w * ConstMatrixMap(col.data(), rows, width);
    }
    for (std::size_t c = 0; c < out_channels; ++c) y.row(c).array() += b[c];
  }

  Shape shape{batch, out_channels, g.out_h, g.out_w};
  return make_result(std::move(shape), std::move(out), "conv2d", {input, weight, bias},
                     [g, batch, out_channels](detail::Node& self) {
    auto& x = *self.inputs[0];
    auto& wt = *self.inputs[1];
    auto& bs = *self.inputs[2];
    const std::size_t rows = g.rows();
    const std::size_t cols = g.cols();
    const std::size_t in_stride = g.channels * g.in_h * g.in_w;
    const std::size_t out_stride = out_channels * cols;
    ConstMatrixMap w(wt.value.data(), out_channels, rows);
    const std::size_t band = band_rows(g);
    std::vector<double> col(rows * band * g.out_w);
    for (std::size_t n = 0; n < batch; ++n) {
      ConstMatrixMap dy(self.grad.data() + n * out_stride, out_channels, cols);
      if (bs.requires_grad) {
        for (std::size_t c = 0; c < out_channels; ++c) bs.grad[c] += dy.row(c).sum();
      }
      for (std::size_t oh0 = 0; oh0 < g.out_h; oh0 += band) {
        const std::size_t oh1 = std::min(g.out_h, oh0 + band);
        const std::size_t width = (oh1 - oh0) * g.out_w;
        const auto dy_band = dy.middleCols(oh0 * g.out_w, width);
        if (wt.requires_grad) {
          im2col(x.value.data() + n * in_stride, g, oh0, oh1, col.data());
          MatrixMap dw(wt.grad.data(), out_channels, rows);
          dw.noalias() += dy_band * ConstMatrixMap(col.data(), rows, width).transpose();
        }
        if (x.requires_grad) {
          MatrixMap dcol(col.data(), rows, width);
          dcol.noalias() = w.transpose() * dy_band;
          col2im_add(col.data(), g, oh0, oh1, x.grad.data() + n * in_stride);
        }
      }
    }
  });
}

Tensor maxpool2d(const Tensor& input, Extent2 kernel, Extent2 stride) {
  require_rank(input, 4, "maxpool2d", "input");
  const std::size_t batch = input.dim(0);
  const std::size_t channels = input.dim(1);
  const std::size_t in_h = input.dim(2);
  const std::size_t in_w = input.dim(3);
  if (kernel.h > in_h || kernel.w > in_w) {
    throw ShapeError("maxpool2d: kernel " + std::to_string(kernel.h) + "x" +
                     std::to_string(kernel.w) + " larger than input " +
                     shape_string(input.shape()));
  }
  const std::size_t out_h = window_output(in_h, kernel.h, stride.h, 0);
  const std::size_t out_w = window_output(in_w, kernel.w, stride.w, 0);
  const std::size_t planes = batch * channels;
  std::vector<double> out(planes * out_h * out_w);
  auto argmax = std::make_shared<std::vector<std::size_t>>(out.size());
  auto x = input.data();
  for (std::size_t p = 0; p < planes; ++p) {
    const std::size_t base = p * in_h * in_w;
    for (std::size_t oh = 0; oh < out_h; ++oh) {
      for (std::size_t ow = 0; ow < out_w; ++ow) {
        std::size_t best = base + oh * stride.h * in_w + ow * stride.w;
        for (std::size_t i = 0; i < kernel.h; ++i) {
          const std::size_t row = base + (oh * stride.h + i) * in_w + ow * stride.w;
          for (std::size_t j = 0; j < kernel.w; ++j) {
            if (x[row + j] > x[best]) best = row + j;
          }
        }
        const std::size_t o = (p * out_h + oh) * out_w + ow;
        out[o] = x[best];
        (*argmax)[o] = best;
      }
    }
  }
  return make_result(Shape{batch, channels, out_h, out_w}, std::move(out), "maxpool2d", {input},
                     [argmax](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (std::size_t o = 0; o < self.grad.size(); ++o) in.grad[(*argmax)[o]] += self.grad[o];
  });
}

Tensor conv1d(const Tensor& input, const Tensor& weight, const Tensor& bias) {
  if (input.rank() != 1 && input.rank() != 2) {
    throw ShapeError("conv1d: input must be {C} or {N, C}, got " + shape_string(input.shape()));
  }
  require_rank(weight, 1, "conv1d", "weight");
  if (weight.dim(0) % 2 == 0) throw ShapeError("conv1d: kernel length must be odd");
  if (bias.numel() != 1) throw ShapeError("conv1d: bias must hold one value");
  const std::size_t length = input.shape().back();
  const std::size_t rows = input.numel() / length;
  const std::size_t k = weight.dim(0);
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(k / 2);
  auto x = input.data();
  auto w = weight.data();
  const double b = bias.data()[0];
  std::vector<double> out(input.numel());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xs = x.data() + r * length;
    for (std::size_t i = 0; i < length; ++i) {
      double acc = b;
      for (std::size_t j = 0; j < k; ++j) {
        const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i + j) - half;
        if (src >= 0 && src < static_cast<std::ptrdiff_t>(length)) acc += w[j] * xs[src];
      }
      out[r * length + i] = acc;
    }
  }
  return make_result(input.shape(), std::move(out), "conv1d", {input, weight, bias},
                     [rows, length, k, half](detail::Node& self) {
    auto& in = *self.inputs[0];
    auto& wt = *self.inputs[1];
    auto& bs = *self.inputs[2];
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < length; ++i) {
        const double g = self.grad[r * length + i];
        if (bs.requires_grad) bs.grad[0] += g;
        for (std::size_t j = 0; j < k; ++j) {
          const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i + j) - half;
          if (src < 0 || src >= static_cast<std::ptrdiff_t>(length)) continue;
          if (wt.requires_grad) wt.grad[j] += g * in.value[r * length + src];
          if (in.requires_grad) in.grad[r * length + src] += g * wt.value[j];
        }
      }
    }
  });
}

Tensor linear(const Tensor& input, const Tensor& weight, const Tensor& bias) {
  require_rank(input, 2, "linear", "input");
  require_rank(weight, 2, "linear", "weight");
  require_rank(bias, 1, "linear", "bias");
  const std::size_t batch = input.dim(0);
  const std::size_t in_features = input.dim(1);
  const std::size_t out_features = weight.dim(0);
  if (weight.dim(1) != in_features) {
    throw ShapeError("linear: weight " + shape_string(weight.shape()) + " does not accept " +
                     std::to_string(in_features) + " features");
  }
  if (bias.dim(0) != out_features) {
    throw ShapeError("linear: bias has " + std::to_string(bias.dim(0)) + " entries for " +
                     std::to_string(out_features) + " outputs");
  }
  std::vector<double> out(batch * out_features);
  MatrixMap y(out.data(), batch, out_features);
  y.noalias() = ConstMatrixMap(input.data().data(), batch, in_features) *
                ConstMatrixMap(weight.data().data(), out_features, in_features).transpose();
  auto b = bias.data();
  for (std::size_t n = 0; n < batch; ++n) {
    for (std::size_t k = 0; k < out_features; ++k) y(n, k) += b[k];
  }
  return make_result(Shape{batch, out_features}, std::move(out), "linear", {input, weight, bias},
                     [batch, in_features, out_features](detail::Node& self) {
    auto& x = *self.inputs[0];
    auto& wt = *self.inputs[1];
    auto& bs = *self.inputs[2];
    ConstMatrixMap dy(self.grad.data(), batch, out_features);
    if (x.requires_grad) {
      MatrixMap(x.grad.data(), batch, in_features).noalias() +=
          dy * ConstMatrixMap(wt.value.data(), out_features, in_features);
    }
    if (wt.requires_grad) {
      MatrixMap(wt.grad.data(), out_features, in_features).noalias() +=
          dy.transpose() * ConstMatrixMap(x.value.data(), batch, in_features);
    }
    if (bs.requires_grad) {
      for (std::size_t k = 0; k < out_features; ++k) bs.grad[k] += dy.col(k).sum();
    }
  });
}

GlobalPool global_pool(const Tensor& features) {
  require_rank(features, 4, "global_pool", "input");
  const std::size_t batch = features.dim(0);
  const std::size_t channels = features.dim(1);
  const std::size_t area = features.dim(2) * features.dim(3);
  auto x = features.data();
  std::vector<double> avg(batch * channels);
  std::vector<double> mx(batch * channels);
  auto argmax = std::make_shared<std::vector<std::size_t>>(batch * channels);
  for (std::size_t p = 0; p < batch * channels; ++p) {
    const double* plane = x.data() + p * area;
    double total = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < area; ++i) {
      total += plane[i];
      if (plane[i] > plane[best]) best = i;
    }
    avg[p] = total / static_cast<double>(area);
    mx[p] = plane[best];
    (*argmax)[p] = p * area + best;
  }
  GlobalPool result;
  result.avg = make_result(Shape{batch, channels}, std::move(avg), "global_avg_pool", {features},
                           [area](detail::Node& self) {
    auto& in = *self.inputs[0];
    const double inv = 1.0 / static_cast<double>(area);
    for (std::size_t p = 0; p < self.grad.size(); ++p) {
      const double g = self.grad[p] * inv;
      double* dst = in.grad.data() + p * area;
      for (std::size_t i = 0; i < area; ++i) dst[i] += g;
    }
  });
  result.max = make_result(Shape{batch, channels}, std::move(mx), "global_max_pool", {features},
                           [argmax](detail::Node& self) {
    auto& in = *self.inputs[0];
    for (std::size_t p = 0; p < self.grad.size(); ++p) in.grad[(*argmax)[p]] += self.grad[p];
  });
  return result;
}

Tensor scale_channels(const Tensor& features, const Tensor& weights) {
  require_rank(features, 4, "scale_channels", "features");
  require_rank(weights, 2, "scale_channels", "weights");
  const std::size_t planes = features.dim(0) * features.dim(1);
  if (weights.dim(0) != features.dim(0) || weights.dim(1) != features.dim(1)) {
    throw ShapeError("scale_channels: weights " + shape_string(weights.shape()) +
                     " do not match features " + shape_string(features.shape()));
  }
  const std::size_t area = features.dim(2) * features.dim(3);
  auto x = features.data();
  auto w = weights.data();
  std::vector<double> out(x.size());
  for (std::size_t p = 0; p < planes; ++p) {
    for (std::size_t i = 0; i < area; ++i) out[p * area + i] = x[p * area + i] * w[p];
  }
  return make_result(features.shape(), std::move(out), "scale_channels", {features, weights},
                     [planes, area](detail::Node& self) {
    auto& f = *self.inputs[0];
    auto& wt = *self.inputs[1];
    for (std::size_t p = 0; p < planes; ++p) {
      const double* g = self.grad.data() + p * area;
      if (f.requires_grad) {
        double* df = f.grad.data() + p * area;
        for (std::size_t i = 0; i < area; ++i) df[i] += g[i] * wt.value[p];
      }
      if (wt.requires_grad) {
        const double* fv = f.value.data() + p * area;
        double acc = 0.0;
        for (std::size_t i = 0; i < area; ++i) acc += g[i] * fv[i];
        wt.grad[p] += acc;
      }
    }
  });
}

Tensor mixed_cross_entropy(const Tensor& logits, std::span<const int> first,
                           std::span<const int> second, std::span<const double> second_weight) {
  require_rank(logits, 2, "cross_entropy", "logits");
  const std::size_t batch = logits.dim(0);
  const std::size_t classes = logits.dim(1);
  check_labels(first, batch, classes, "cross_entropy");
  check_labels(second, batch, classes, "cross_entropy");
  if (second_weight.size() != batch) throw InputError("cross_entropy: one weight per row needed");
  for (double r : second_weight) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw InputError("cross_entropy: label weight " + std::to_string(r) + " outside [0, 1]");
    }
  }
  auto z = logits.data();
  auto probs = std::make_shared<std::vector<double>>(batch * classes);
  double total = 0.0;
  for (std::size_t n = 0; n < batch; ++n) {
    const double* row = z.data() + n * classes;
    const double peak = *std::max_element(row, row + classes);
    double denom = 0.0;
    for (std::size_t k = 0; k < classes; ++k) denom += std::exp(row[k] - peak);
    const double log_sum = peak + std::log(denom);
    for (std::size_t k = 0; k < classes; ++k) {
      (*probs)[n * classes + k] = std::exp(row[k] - log_sum);
    }
    const double r = second_weight[n];
    total += (1.0 - r) * (log_sum - row[first[n]]) + r * (log_sum - row[second[n]]);
  }
  total /= static_cast<double>(batch);

  std::vector<int> a(first.begin(), first.end());
  std::vector<int> b(second.begin(), second.end());
  std::vector<double> r(second_weight.begin(), second_weight.end());
  return make_result(Shape{1}, {total}, "cross_entropy", {logits},
                     [probs, a = std::move(a), b = std::move(b), r = std::move(r), batch,
                      classes](detail::Node& self) {
    auto& in = *self.inputs[0];
    const double g = self.grad[0] / static_cast<double>(batch);
    for (std::size_t n = 0; n < batch; ++n) {
      double* dst = in.grad.data() + n * classes;
      const double* p = probs->data() + n * classes;
      for (std::size_t k = 0; k < classes; ++k) dst[k] += g * p[k];
      dst[a[n]] -= g * (1.0 - r[n]);
      dst[b[n]] -= g * r[n];
    }
  });
}

Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels) {
  std::vector<double> zeros(labels.size(), 0.0);
  return mixed_cross_entropy(logits, labels, labels, zeros);
}

Tensor softmax(const Tensor& logits) {
  require_rank(logits, 2, "softmax", "logits");
  const std::size_t batch = logits.dim(0);
  const std::size_t classes = logits.dim(1);
  auto z = logits.data();
  std::vector<double> out(z.size());
  for (std::size_t n = 0; n < batch; ++n) {
    const double* row = z.data() + n * classes;
    const double peak = *std::max_element(row, row + classes);
    double denom = 0.0;
    for (std::size_t k = 0; k < classes; ++k) {
      out[n * classes + k] = std::exp(row[k] - peak);
      denom += out[n * classes + k];
    }
    for (std::size_t k = 0; k < classes; ++k) out[n * classes + k] /= denom;
  }
  return Tensor(logits.shape(), std::move(out));
}

}  // namespace tastenet
