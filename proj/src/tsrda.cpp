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

#include "tastenet/tsrda.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tastenet/errors.hpp"
#include "tastenet/rng.hpp"

namespace tastenet::tsrda {

void validate(const BetaParams& params) {
  const bool ok = (params.alpha == 1 || params.alpha == 2) && (params.beta == 1 || params.beta == 2);
  if (!ok) {
    throw InputError("unsupported Beta(" + std::to_string(params.alpha) + ", " +
                     std::to_string(params.beta) + "); alpha and beta must be 1 or 2");
  }
}

double beta_cdf(const BetaParams& params, double x) {
  validate(params);
  x = std::clamp(x, 0.0, 1.0);
  if (params.alpha == 1 && params.beta == 1) return x;
  if (params.alpha == 2 && params.beta == 1) return x * x;
  if (params.alpha == 1 && params.beta == 2) return 1.0 - (1.0 - x) * (1.0 - x);
  return 3.0 * x * x - 2.0 * x * x * x;
}

double sample_beta(const BetaParams& params, double u) {
  validate(params);
  if (!(u >= 0.0 && u <= 1.0)) throw InputError("sample_beta: u must lie in [0, 1]");
  if (params.alpha == 1 && params.beta == 1) return u;
  if (params.alpha == 2 && params.beta == 1) return std::sqrt(u);
  if (params.alpha == 1 && params.beta == 2) return 1.0 - std::sqrt(1.0 - u);
  // Beta(2,2): the CDF 3x^2 - 2x^3 is strictly increasing on [0, 1].
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (3.0 * mid * mid - 2.0 * mid * mid * mid < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CutRect cut_rect(double lambda_p, double lambda_q, double lambda_w, double lambda_h,
                 std::size_t width, std::size_t height) {
  for (double l : {lambda_p, lambda_q, lambda_w, lambda_h}) {
    if (!(l >= 0.0 && l <= 1.0)) throw InputError("cut_rect: lambda must lie in [0, 1]");
  }
  const auto W = static_cast<std::int64_t>(width);
  const auto H = static_cast<std::int64_t>(height);
  const auto p = static_cast<std::int64_t>(std::floor(lambda_p * static_cast<double>(W)));
  const auto q = static_cast<std::int64_t>(std::floor(lambda_q * static_cast<double>(H)));
  const auto w = static_cast<std::int64_t>(std::floor(lambda_w * static_cast<double>(W)));
  const auto h = static_cast<std::int64_t>(std::floor(lambda_h * static_cast<double>(H)));
  auto clip = [](std::int64_t v, std::int64_t hi) {
    return static_cast<std::size_t>(std::clamp<std::int64_t>(v, 0, hi));
  };
  CutRect rect;
  rect.t0 = clip(p - w / 2, W);
  rect.t1 = clip(p + (w + 1) / 2, W);
  rect.c0 = clip(q - h / 2, H);
  rect.c1 = clip(q + (h + 1) / 2, H);
  if (rect.t1 <= rect.t0 || rect.c1 <= rect.c0) rect = CutRect{};
  return rect;
}

DualLabelSample reconstruct(const EegSample& base, const EegSample& donor, const CutRect& rect) {
  if (base.channels != donor.channels || base.timepoints != donor.timepoints ||
      base.data.size() != donor.data.size() ||
      base.data.size() != base.channels * base.timepoints) {
    throw InputError("reconstruct: base and donor shapes differ");
  }
  if (rect.t1 > base.timepoints || rect.c1 > base.channels || rect.t0 > rect.t1 ||
      rect.c0 > rect.c1) {
    throw InputError("reconstruct: block exceeds the sample bounds");
  }
  DualLabelSample out;
  out.channels = base.channels;
  out.timepoints = base.timepoints;
  out.data = base.data;
  out.labelx = base.label;
  // Nothing is pasted from an empty block, so the sample stays single-labeled.
  out.labely = rect.area() == 0 ? base.label : donor.label;
  for (std::size_t c = rect.c0; c < rect.c1; ++c) {
    const std::size_t row = c * base.timepoints;
    std::copy(donor.data.begin() + static_cast<std::ptrdiff_t>(row + rect.t0),
              donor.data.begin() + static_cast<std::ptrdiff_t>(row + rect.t1),
              out.data.begin() + static_cast<std::ptrdiff_t>(row + rect.t0));
  }
  out.r = static_cast<double>(rect.area()) /
          static_cast<double>(base.channels * base.timepoints);
  return out;
}

std::vector<DualLabelSample> augment_set(std::span<const EegSample> train,
                                         const AugmentConfig& config) {
  if (train.empty()) throw InputError("augment_set: empty training set");
  if (config.multiple < 0) throw InputError("augment_set: multiple must be non-negative");
  for (const BetaParams& b : {config.loc_p, config.loc_q, config.size_w, config.size_h}) {
    validate(b);
  }
  const std::size_t n = train.size();
  const std::size_t extra = static_cast<std::size_t>(config.multiple) * n;
  std::vector<DualLabelSample> out = to_dual_label(train);
  out.reserve(n + extra);
  for (std::size_t k = 0; k < extra; ++k) {
    Rng rng(config.seed, k);
    const std::size_t base = rng.index(n);
    std::size_t donor = base;
    if (n > 1) {
      donor = rng.index(n - 1);
      if (donor >= base) ++donor;
    }
    const EegSample& x = train[base];
    const double lp = sample_beta(config.loc_p, rng.uniform());
    const double lq = sample_beta(config.loc_q, rng.uniform());
    const double lw = sample_beta(config.size_w, rng.uniform());
    const double lh = sample_beta(config.size_h, rng.uniform());
    const CutRect rect = cut_rect(lp, lq, lw, lh, x.timepoints, x.channels);
    out.push_back(reconstruct(x, train[donor], rect));
  }
  return out;
}

std::vector<DualLabelSample> gaussian_noise_baseline(std::span<const EegSample> train, double sigma,
                                                     int multiple, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InputError("gaussian_noise_baseline: sigma must be non-negative");
  if (multiple < 0) throw InputError("gaussian_noise_baseline: multiple must be non-negative");
  const std::size_t n = train.size();
  const std::size_t extra = static_cast<std::size_t>(multiple) * n;
  std::vector<DualLabelSample> out = to_dual_label(train);
  out.reserve(n + extra);
  for (std::size_t k = 0; k < extra; ++k) {
    Rng rng(seed, k);
    DualLabelSample copy = DualLabelSample::from_raw(train[k % n]);
    if (sigma > 0.0) {
      for (double& v : copy.data) v += rng.normal(0.0, sigma);
    }
    out.push_back(std::move(copy));
  }
  return out;
}

}  // namespace tastenet::tsrda
