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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tastenet/dsp.hpp"
#include "tastenet/model.hpp"
#include "tastenet/synth.hpp"
#include "tastenet/training.hpp"
#include "tastenet/tsrda.hpp"

namespace tastenet::config {

struct SplitConfig {
  std::uint64_t seed = 0;
  int train_parts = 3;
  int test_parts = 1;
};

struct AugmentSection {
  train::AugmentMethod method = train::AugmentMethod::kTsrda;
  tsrda::AugmentConfig tsrda;
  std::optional<double> sigma;  // required by the Gaussian baseline
};

struct PreprocessSection {
  double fs = 256.0;
  dsp::PreprocessOptions options;
};

struct ModelSection {
  model::ModelSpec spec;
  std::uint64_t seed = 0;
};

struct AblateSection {
  train::AblationKind kind = train::AblationKind::kComponentGrid;
  int runs = 5;
  std::uint64_t base_seed = 0;
  int workers = 1;
  bool holdout_validation = false;
};

// Everything a command can be configured with. Keys of the JSON document
// mirror these sections; absent keys keep their defaults.
struct PipelineConfig {
  synth::SynthConfig synth;
  PreprocessSection preprocess;
  SplitConfig split;
  AugmentSection augment;
  ModelSection model;
  train::TrainConfig train;
  AblateSection ablate;
};

// Throws ConfigError naming the dotted key path of the first problem.
PipelineConfig parse(const nlohmann::json& doc);
nlohmann::json to_json(const PipelineConfig& config);

// Reads `path` (empty path means an empty document) and applies
// "dotted.key=value" overrides; values parse as JSON, else as strings.
nlohmann::json load_document(const std::string& path, const std::vector<std::string>& overrides);
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace tastenet::config
