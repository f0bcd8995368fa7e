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
#include <vector>

#include "tastenet/eeg.hpp"

namespace tastenet::tsrda {

// Beta(alpha, beta) restricted to alpha, beta in {1, 2}.
struct BetaParams {
  int alpha = 1;
  int beta = 1;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

// Throws InputError unless params is one of (1,1), (1,2), (2,1), (2,2).
void validate(const BetaParams& params);

// Quantile function evaluated at u in [0, 1].
double sample_beta(const BetaParams& params, double u);

// Analytic CDF, used by goodness-of-fit checks.
double beta_cdf(const BetaParams& params, double x);

// Half-open time x channel block: [t0, t1) x [c0, c1).
struct CutRect {
  std::size_t t0 = 0;
  std::size_t t1 = 0;
  std::size_t c0 = 0;
  std::size_t c1 = 0;

  std::size_t area() const { return (t1 - t0) * (c1 - c0); }
  bool contains(std::size_t c, std::size_t t) const {
    return t >= t0 && t < t1 && c >= c0 && c < c1;
  }
  friend bool operator==(const CutRect&, const CutRect&) = default;
};

// Block centered at (floor(lp*W), floor(lq*H)) with extents
// floor(lw*W) x floor(lh*H), clipped to the sample.
CutRect cut_rect(double lambda_p, double lambda_q, double lambda_w, double lambda_h,
                 std::size_t width = kTimepoints, std::size_t height = kChannels);

// `base` with the `rect` block replaced by the same block of `donor`.
DualLabelSample reconstruct(const EegSample& base, const EegSample& donor, const CutRect& rect);

struct AugmentConfig {
  int multiple = 3;
  BetaParams loc_p{1, 1};
  BetaParams loc_q{2, 1};
  BetaParams size_w{1, 1};
  BetaParams size_h{1, 1};
  std::uint64_t seed = 0;
};

// Raw samples (r = 0) followed by multiple * |train| reconstructions. The
// k-th reconstruction draws from its own stream derive_seed(seed, k).
std::vector<DualLabelSample> augment_set(std::span<const EegSample> train,
                                         const AugmentConfig& config);

// Raw samples followed by multiple * |train| noisy copies; copy k perturbs
// train[k % |train|] with i.i.d. N(0, sigma^2) noise.
std::vector<DualLabelSample> gaussian_noise_baseline(std::span<const EegSample> train, double sigma,
                                                     int multiple, std::uint64_t seed);

}  // namespace tastenet::tsrda
