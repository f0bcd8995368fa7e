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
#include <string>
#include <string_view>
#include <vector>

namespace tastenet {

inline constexpr std::size_t kChannels = 21;
inline constexpr std::size_t kTimepoints = 256;
inline constexpr int kNumClasses = 4;

// 10-20 montage order of the recording cap.
inline constexpr std::string_view kChannelNames[kChannels] = {
    "Fz", "Cz", "Pz", "T3", "T4", "C3", "C4", "Fp1", "Fp2", "F7", "F8",
    "T5", "T6", "O1", "O2", "F3", "F4", "P3", "P4", "A1", "A2"};

// Class index of each taste: sour 0, sweet 1, bitter 2, salty 3.
std::string_view taste_name(int label);
int taste_label(std::string_view name);

struct RecordingEvent {
  std::size_t onset_sample = 0;
  int label = 0;
};

// Multichannel continuous signal, stored channel-major.
struct ContinuousRecording {
  double fs = 256.0;
  std::size_t channels = 0;
  std::vector<double> data;
  std::vector<std::string> channel_names;
  std::vector<RecordingEvent> events;

  std::size_t samples() const { return channels == 0 ? 0 : data.size() / channels; }
  std::span<double> channel(std::size_t c) {
    return std::span<double>(data).subspan(c * samples(), samples());
  }
  std::span<const double> channel(std::size_t c) const {
    return std::span<const double>(data).subspan(c * samples(), samples());
  }
};

// One epoch, channels x timepoints (the transpose of the timepoints x channels
// layout common in EEG toolboxes).
struct EegSample {
  std::size_t channels = kChannels;
  std::size_t timepoints = kTimepoints;
  std::vector<double> data;
  int label = 0;
  int subject = 0;
  int segment = 0;

  double at(std::size_t c, std::size_t t) const { return data[c * timepoints + t]; }
};

// Epoch carrying two class labels; `r` is the weight of `labely`.
// Unaugmented samples have labely == labelx and r == 0.
struct DualLabelSample {
  std::size_t channels = kChannels;
  std::size_t timepoints = kTimepoints;
  std::vector<double> data;
  int labelx = 0;
  int labely = 0;
  double r = 0.0;

  static DualLabelSample from_raw(const EegSample& sample);
};

std::vector<DualLabelSample> to_dual_label(std::span<const EegSample> samples);

// Throws InputError if any sample is genuinely dual-labeled.
std::vector<EegSample> to_single_label(std::span<const DualLabelSample> samples);

}  // namespace tastenet
