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
#include <vector>

#include "tastenet/eeg.hpp"

namespace tastenet::dsp {

enum class FilterKind { kBandpass, kBandstop };

// Linear-phase FIR filter; taps are symmetric and odd in number.
struct FirFilter {
  FilterKind kind = FilterKind::kBandpass;
  double low_hz = 0.0;
  double high_hz = 0.0;
  double fs = 0.0;
  std::vector<double> taps;
};

inline constexpr std::size_t kDefaultTaps = 513;

// Hamming-windowed sinc design. The band is the difference of two windowed
// lowpass kernels, each normalized to unit DC gain, so a bandpass has exactly
// zero gain at DC. A bandstop is the spectral inversion of the bandpass.
FirFilter design_fir(FilterKind kind, double low_hz, double high_hz, double fs,
                     std::size_t n_taps = kDefaultTaps);

// |H(f)| of a single pass of the filter.
double magnitude_response(const FirFilter& filter, double freq_hz);

// Zero-phase filtering of one signal: reflect-pad by the tap count, filter,
// reverse, filter again, reverse, trim. Effective response is |H(f)|^2.
std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> signal);

// Every channel filtered independently; length and channel order preserved.
ContinuousRecording apply_filter(const ContinuousRecording& recording, const FirFilter& filter);

// Keeps every `factor`-th sample starting at 0. Event onsets are divided by
// the factor (rounded down).
ContinuousRecording downsample(const ContinuousRecording& recording, int factor);

struct EpochOptions {
  double window_s = 2.0;
  double segment_s = 10.0;
};

// Each event opens a segment that is cut into consecutive non-overlapping
// windows carrying the event's label.
std::vector<EegSample> epoch(const ContinuousRecording& recording, const EpochOptions& options = {},
                             int subject = 0);

// Per-channel zero-mean, unit-variance normalization of a sample.
void zscore(EegSample& sample);

struct PreprocessOptions {
  double bandpass_low_hz = 0.5;
  double bandpass_high_hz = 50.0;
  double notch_low_hz = 49.0;
  double notch_high_hz = 51.0;
  std::size_t n_taps = kDefaultTaps;
  int downsample_factor = 2;
  EpochOptions epoch;
  bool zscore = false;
};

// Bandpass, notch, downsample, epoch.
std::vector<EegSample> preprocess(const ContinuousRecording& recording,
                                  const PreprocessOptions& options = {}, int subject = 0);

}  // namespace tastenet::dsp
