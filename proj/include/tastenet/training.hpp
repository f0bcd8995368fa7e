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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tastenet/eeg.hpp"
#include "tastenet/metrics.hpp"
#include "tastenet/model.hpp"
#include "tastenet/tsrda.hpp"

namespace tastenet::train {

struct TrainConfig {
  int epochs = 100;
  double lr = 0.0005;
  double weight_decay = 0.001;
  int train_batch = 64;
  int eval_batch = 32;
  std::uint64_t seed = 0;  // minibatch shuffling
};

void validate(const TrainConfig& config);

struct Split {
  std::vector<EegSample> train;
  std::vector<EegSample> test;
};

// Stratified random split: within each class, round(n * test_parts / total)
// samples go to test. Original order is kept inside each part.
Split split(std::span<const EegSample> dataset, std::uint64_t seed, int train_parts = 3,
            int test_parts = 1);

// Batch mean of (1 - r) CE(logits, labelx) + r CE(logits, labely).
Tensor dual_label_loss(const Tensor& logits, std::span<const int> labelx,
                       std::span<const int> labely, std::span<const double> r);

struct Evaluation {
  ConfusionMatrix confusion;
  Metrics metrics;
};

// Argmax predictions on a single-labeled set, in batches, without recording.
Evaluation evaluate(const model::Tscnn& model, std::span<const EegSample> testset,
                    int batch_size = 32);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  Metrics test;
  std::optional<Metrics> validation;
};

struct RunResult {
  std::vector<EpochRecord> history;
  // Maxima over the per-epoch test series; NaN for an empty history.
  double best_accuracy = 0.0;
  double best_f1 = 0.0;
  double best_kappa = 0.0;
  // Held-out validation mode: test metrics at the epoch with the highest
  // validation accuracy (first such epoch).
  std::optional<int> selected_epoch;
  std::optional<Metrics> selected;

  // The three numbers a run reports: `selected` when present, bests otherwise.
  Metrics headline() const;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Minibatch Adam on the dual-label loss; the test set (and the validation set
// if nonempty) is evaluated after every epoch. Epoch e visits samples in the
// order of a shuffle drawn from stream (config.seed, e).
RunResult train(model::Tscnn& model, std::span<const DualLabelSample> train_set,
                std::span<const EegSample> testset, const TrainConfig& config,
                std::span<const EegSample> validation = {}, const EpochCallback& on_epoch = {});

enum class AugmentMethod { kNone, kTsrda, kGaussian };

std::string to_string(AugmentMethod method);
AugmentMethod parse_augment_method(const std::string& name);

// One experimental arm: augmenter, model variant and optimizer settings.
struct Condition {
  std::string name = "tsrda+tscnn-ca";
  AugmentMethod method = AugmentMethod::kTsrda;
  tsrda::AugmentConfig augment;  // seed is replaced per run
  double noise_sigma = 0.0;      // Gaussian baseline only
  model::ModelSpec model;
  TrainConfig train;             // seed is replaced per run
  bool holdout_validation = false;
};

struct RunSeeds {
  std::uint64_t model = 0;
  std::uint64_t augment = 0;
  std::uint64_t shuffle = 0;
  std::uint64_t validation_split = 0;
};

RunSeeds run_seeds(std::uint64_t run_seed);

// Augments data.train, builds and trains a fresh model, all seeded from
// `run_seed`.
RunResult run_condition(const Condition& condition, const Split& data, std::uint64_t run_seed,
                        const EpochCallback& on_epoch = {});

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

Stat mean_std(std::span<const double> values);

struct MultiRunSummary {
  std::string condition;
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult> runs;
  Stat accuracy;
  Stat f1;
  Stat kappa;
};

MultiRunSummary summarize(const std::string& condition, std::vector<std::uint64_t> seeds,
                          std::vector<RunResult> runs);

using RunCallback = std::function<void(std::size_t run, const RunResult&)>;

// One run per seed; `workers` runs may execute concurrently, with results
// identical to sequential execution.
MultiRunSummary multi_run(const Condition& condition, const Split& data,
                          const std::vector<std::uint64_t>& seeds, int workers = 1,
                          const RunCallback& on_run = {});

// n runs seeded derive_seed(base_seed, i).
MultiRunSummary multi_run(const Condition& condition, const Split& data, int n,
                          std::uint64_t base_seed, int workers = 1,
                          const RunCallback& on_run = {});

enum class AblationKind { kMultipleSweep, kLocationGrid, kComponentGrid };

AblationKind parse_ablation_kind(const std::string& name);
std::string to_string(AblationKind kind);

// multiple_sweep: m = 0..6 (m = 0 trains on raw data). location_grid: every
// pairing of the four Beta laws for the block center, m = 3.
// component_grid: {raw, TSRDA} x {TSCNN, TSCNN-CA}.
std::vector<Condition> ablation_conditions(AblationKind kind, const Condition& base);

std::vector<MultiRunSummary> ablation_suite(AblationKind kind, const Condition& base,
                                            const Split& data, int n_runs,
                                            std::uint64_t base_seed, int workers = 1);

}  // namespace tastenet::train
