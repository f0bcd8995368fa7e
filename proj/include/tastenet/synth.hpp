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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tastenet/eeg.hpp"

namespace tastenet::synth {

struct SynthConfig {
  int n_subjects = 20;
  int segments_per_class_per_subject = 4;
  // Linear amplitude ratio: RMS of the class oscillation over RMS of the
  // background, on active channels. Infinity disables the background.
  double snr = 2.0;
  double subject_variability = 0.2;  // in [0, 1]
  std::uint64_t seed = 0;
};

inline constexpr int kClasses = kNumClasses;

struct ClassSignature {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  std::vector<std::size_t> active_channels;
};

// Class 0..3 at 6, 11, 19 and 27 Hz, 2 Hz wide, five active channels each
// drawn from indices 12..20.
const std::array<ClassSignature, kClasses>& class_signatures();

// Nominal RMS of the class oscillation, microvolts.
inline constexpr double kSignalRms = 2.0;

void validate(const SynthConfig& config);

// One subject's session: segments of 10 s, class-major, back to back, with an
// event at each segment onset.
ContinuousRecording generate_recording(const SynthConfig& config, int subject, double fs = 128.0);

// All subjects, epoched into 2 s samples at 128 Hz: subjects x classes x
// segments x 5 samples.
std::vector<EegSample> generate(const SynthConfig& config);

// Mean periodogram power of `signal` (sampled at fs) over [lo_hz, hi_hz].
double band_power(std::span<const double> signal, double fs, double lo_hz, double hi_hz);

}  // namespace tastenet::synth
