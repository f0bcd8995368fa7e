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

#include <string>

#include "tastenet/eeg.hpp"

// Continuous recordings on disk: a CSV with a header row of channel names and
// one row per timepoint, plus a JSON sidecar listing
// [{"onset_sample": n, "label": 0..3 | "sour" | ...}].
namespace tastenet::io {

ContinuousRecording read_recording(const std::string& csv_path, const std::string& events_path,
                                   double fs);

void write_recording(const ContinuousRecording& recording, const std::string& csv_path,
                     const std::string& events_path);

}  // namespace tastenet::io
