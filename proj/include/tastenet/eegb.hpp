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
#include <string>
#include <vector>

#include "tastenet/eeg.hpp"

// EEGB: little-endian sample container.
//
//   offset  size  field
//   0       4     magic "EEGB"
//   4       4     u32 version (1)
//   8       4     u32 n_samples
//   12      2     u16 n_channels
//   14      2     u16 n_timepoints
//   16      4     f32 fs
//   20      ...   per sample: u8 labelx, u8 labely, f32 r,
//                 n_channels * n_timepoints f32, channel-major
namespace tastenet::eegb {

inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 20;

struct Dataset {
  double fs = 128.0;
  std::size_t channels = kChannels;
  std::size_t timepoints = kTimepoints;
  std::vector<DualLabelSample> samples;
};

// Values are stored as f32; r must lie in [0, 1] and r == 0 needs
// labely == labelx.
std::vector<std::uint8_t> encode(const Dataset& dataset);

// Throws FormatError with the byte offset of the first violation.
Dataset decode(const std::vector<std::uint8_t>& bytes);

void write(const std::string& path, const Dataset& dataset);
Dataset read(const std::string& path);

Dataset from_samples(const std::vector<EegSample>& samples, double fs = 128.0);
Dataset from_samples(const std::vector<DualLabelSample>& samples, double fs = 128.0);

}  // namespace tastenet::eegb
