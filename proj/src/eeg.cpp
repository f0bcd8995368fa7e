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

#include "tastenet/eeg.hpp"

#include <array>

#include "tastenet/errors.hpp"

namespace tastenet {

namespace {
constexpr std::array<std::string_view, kNumClasses> kTasteNames = {"sour", "sweet", "bitter",
                                                                   "salty"};
}  // namespace

std::string_view taste_name(int label) {
  if (label < 0 || label >= kNumClasses) {
    throw InputError("taste label " + std::to_string(label) + " outside [0, 4)");
  }
  return kTasteNames[static_cast<std::size_t>(label)];
}

int taste_label(std::string_view name) {
  for (std::size_t i = 0; i < kTasteNames.size(); ++i) {
    if (kTasteNames[i] == name) return static_cast<int>(i);
  }
  throw InputError("unknown taste '" + std::string(name) + "'");
}

DualLabelSample DualLabelSample::from_raw(const EegSample& sample) {
  DualLabelSample out;
  out.channels = sample.channels;
  out.timepoints = sample.timepoints;
  out.data = sample.data;
  out.labelx = sample.label;
  out.labely = sample.label;
  out.r = 0.0;
  return out;
}

std::vector<DualLabelSample> to_dual_label(std::span<const EegSample> samples) {
  std::vector<DualLabelSample> out;
  out.reserve(samples.size());
  for (const EegSample& s : samples) out.push_back(DualLabelSample::from_raw(s));
  return out;
}

std::vector<EegSample> to_single_label(std::span<const DualLabelSample> samples) {
  std::vector<EegSample> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DualLabelSample& s = samples[i];
    if (s.r != 0.0 && s.labelx != s.labely) {
      throw InputError("sample " + std::to_string(i) + " is dual-labeled (r = " +
                       std::to_string(s.r) + ")");
    }
    EegSample e;
    e.channels = s.channels;
    e.timepoints = s.timepoints;
    e.data = s.data;
    e.label = s.labelx;
    e.segment = static_cast<int>(i);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tastenet
