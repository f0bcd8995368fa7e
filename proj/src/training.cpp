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

#include "tastenet/training.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "tastenet/adam.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/ops.hpp"
#include "tastenet/rng.hpp"

namespace tastenet::train {

namespace {

// Each step frees and reallocates a few hundred MB of activations. glibc would
// hand those pages back to the kernel every time and fault them in again.
void keep_freed_memory() {
#if defined(__GLIBC__)
  static std::once_flag once;
  std::call_once(once, [] {
    mallopt(M_MMAP_THRESHOLD, 32 << 20);  // the largest value glibc accepts
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
  });
#endif
}

}  // namespace

void validate(const TrainConfig& config) {
  if (config.epochs < 0) throw InputError("epochs must be non-negative");
  if (!(config.lr > 0.0)) throw InputError("learning rate must be positive");
  if (!(config.weight_decay >= 0.0)) throw InputError("weight decay must be non-negative");
  if (config.train_batch < 1 || config.eval_batch < 1) {
    throw InputError("batch sizes must be positive");
  }
}

Split split(std::span<const EegSample> dataset, std::uint64_t seed, int train_parts,
            int test_parts) {
  if (train_parts < 1 || test_parts < 1) throw InputError("split ratio parts must be positive");
  std::vector<std::vector<std::size_t>> by_class(kNumClasses);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const int label = dataset[i].label;
    if (label < 0 || label >= kNumClasses) {
      throw InputError("split: sample " + std::to_string(i) + " has label " +
                       std::to_string(label));
    }
    by_class[static_cast<std::size_t>(label)].push_back(i);
  }
  std::vector<bool> in_test(dataset.size(), false);
  for (std::size_t k = 0; k < by_class.size(); ++k) {
    std::vector<std::size_t>& members = by_class[k];
    if (members.empty()) {
      throw InputError("split: class " + std::to_string(k) + " (" +
                       std::string(taste_name(static_cast<int>(k))) + ") has no samples");
    }
    Rng rng(seed, k);
    std::shuffle(members.begin(), members.end(), rng.engine());
    const auto n_test = static_cast<std::size_t>(std::llround(
        static_cast<double>(members.size()) * test_parts / (train_parts + test_parts)));
    for (std::size_t j = 0; j < n_test; ++j) in_test[members[j]] = true;
  }
  Split out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (in_test[i] ? out.test : out.train).push_back(dataset[i]);
  }
  return out;
}

Tensor dual_label_loss(const Tensor& logits, std::span<const int> labelx,
                       std::span<const int> labely, std::span<const double> r) {
  return mixed_cross_entropy(logits, labelx, labely, r);
}

Evaluation evaluate(const model::Tscnn& model, std::span<const EegSample> testset,
                    int batch_size) {
  if (testset.empty()) throw InputError("evaluate: empty test set");
  if (batch_size < 1) throw InputError("evaluate: batch size must be positive");
  NoGradGuard no_grad;
  ConfusionMatrix confusion(static_cast<std::size_t>(model.spec().num_classes));
  const auto step = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < testset.size(); start += step) {
    const std::size_t count = std::min(step, testset.size() - start);
    const auto chunk = testset.subspan(start, count);
    const Tensor logits = model.forward(model::make_batch(chunk));
    const std::size_t classes = logits.dim(1);
    auto z = logits.data();
    for (std::size_t n = 0; n < count; ++n) {
      const double* row = z.data() + n * classes;
      const auto predicted = static_cast<int>(std::max_element(row, row + classes) - row);
      confusion.add(chunk[n].label, predicted);
    }
  }
  return Evaluation{confusion, compute_metrics(confusion)};
}

Metrics RunResult::headline() const {
  if (selected) return *selected;
  return Metrics{best_accuracy, best_f1, best_kappa};
}

RunResult train(model::Tscnn& model, std::span<const DualLabelSample> train_set,
                std::span<const EegSample> testset, const TrainConfig& config,
                std::span<const EegSample> validation, const EpochCallback& on_epoch) {
  validate(config);
  keep_freed_memory();
  if (train_set.empty() && config.epochs > 0) throw InputError("train: empty training set");
  std::vector<Tensor> params = model.parameters();
  Adam optimizer(params, AdamOptions{config.lr, 0.9, 0.999, 1e-8, config.weight_decay});
  RunResult result;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.best_accuracy = result.best_f1 = result.best_kappa = nan;
  const auto batch = static_cast<std::size_t>(config.train_batch);
  std::vector<std::size_t> order(train_set.size());
  double best_validation = -1.0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(config.seed, static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng.engine());

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t count = std::min(batch, order.size() - start);
      std::span<const std::size_t> idx(order.data() + start, count);
      std::vector<int> lx(count), ly(count);
      std::vector<double> r(count);
      for (std::size_t i = 0; i < count; ++i) {
        const DualLabelSample& s = train_set[idx[i]];
        lx[i] = s.labelx;
        ly[i] = s.labely;
        r[i] = s.r;
      }
      optimizer.zero_grad();
      Tensor loss = dual_label_loss(model.forward(model::make_batch(train_set, idx)), lx, ly, r);
      backward(loss);
      optimizer.step();
      loss_sum += loss.item() * static_cast<double>(count);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    record.test = evaluate(model, testset, config.eval_batch).metrics;
    if (!validation.empty()) {
      record.validation = evaluate(model, validation, config.eval_batch).metrics;
      if (record.validation->accuracy > best_validation) {
        best_validation = record.validation->accuracy;
        result.selected_epoch = epoch;
        result.selected = record.test;
      }
    }
    if (result.history.empty()) {
      result.best_accuracy = record.test.accuracy;
      result.best_f1 = record.test.f1;
      result.best_kappa = record.test.kappa;
    } else {
      result.best_accuracy = std::max(result.best_accuracy, record.test.accuracy);
      result.best_f1 = std::max(result.best_f1, record.test.f1);
      result.best_kappa = std::max(result.best_kappa, record.test.kappa);
    }
    result.history.push_back(record);
    if (on_epoch) on_epoch(record);
  }
  return result;
}

std::string to_string(AugmentMethod method) {
  switch (method) {
    case AugmentMethod::kNone:
      return "none";
    case AugmentMethod::kTsrda:
      return "tsrda";
    case AugmentMethod::kGaussian:
      return "gaussian";
  }
  return "none";
}

AugmentMethod parse_augment_method(const std::string& name) {
  if (name == "none" || name == "raw") return AugmentMethod::kNone;
  if (name == "tsrda") return AugmentMethod::kTsrda;
  if (name == "gaussian") return AugmentMethod::kGaussian;
  throw InputError("unknown augmentation method '" + name + "' (none|tsrda|gaussian)");
}

RunSeeds run_seeds(std::uint64_t run_seed) {
  return RunSeeds{derive_seed(run_seed, 0), derive_seed(run_seed, 1), derive_seed(run_seed, 2),
                  derive_seed(run_seed, 3)};
}

RunResult run_condition(const Condition& condition, const Split& data, std::uint64_t run_seed,
                        const EpochCallback& on_epoch) {
  const RunSeeds seeds = run_seeds(run_seed);
  std::vector<EegSample> raw_train = data.train;
  std::vector<EegSample> validation;
  if (condition.holdout_validation) {
    Split inner = split(data.train, seeds.validation_split);
    raw_train = std::move(inner.train);
    validation = std::move(inner.test);
  }

  std::vector<DualLabelSample> train_set;
  switch (condition.method) {
    case AugmentMethod::kNone:
      train_set = to_dual_label(raw_train);
      break;
    case AugmentMethod::kTsrda: {
      tsrda::AugmentConfig cfg = condition.augment;
      cfg.seed = seeds.augment;
      train_set = tsrda::augment_set(raw_train, cfg);
      break;
    }
    case AugmentMethod::kGaussian:
      train_set = tsrda::gaussian_noise_baseline(raw_train, condition.noise_sigma,
                                                 condition.augment.multiple, seeds.augment);
      break;
  }

  model::Tscnn net = model::Tscnn::build(condition.model, seeds.model);
  TrainConfig cfg = condition.train;
  cfg.seed = seeds.shuffle;
  return train(net, train_set, data.test, cfg, validation, on_epoch);
}

Stat mean_std(std::span<const double> values) {
  if (values.empty()) return Stat{std::numeric_limits<double>::quiet_NaN(), 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return Stat{mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return Stat{mean, std::sqrt(ss / (n - 1.0))};
}

MultiRunSummary summarize(const std::string& condition, std::vector<std::uint64_t> seeds,
                          std::vector<RunResult> runs) {
  std::vector<double> acc, f1, kappa;
  for (const RunResult& r : runs) {
    const Metrics m = r.headline();
    acc.push_back(m.accuracy);
    f1.push_back(m.f1);
    kappa.push_back(m.kappa);
  }
  MultiRunSummary s;
  s.condition = condition;
  s.seeds = std::move(seeds);
  s.runs = std::move(runs);
  s.accuracy = mean_std(acc);
  s.f1 = mean_std(f1);
  s.kappa = mean_std(kappa);
  return s;
}

MultiRunSummary multi_run(const Condition& condition, const Split& data,
                          const std::vector<std::uint64_t>& seeds, int workers,
                          const RunCallback& on_run) {
  if (seeds.empty()) throw InputError("multi_run: at least one run is required");
  std::vector<RunResult> runs(seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        runs[i] = run_condition(condition, data, seeds[i]);
        if (on_run) {
          std::lock_guard<std::mutex> lock(callback_mutex);
          on_run(i, runs[i]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(callback_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, seeds.size());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(condition.name, seeds, std::move(runs));
}

MultiRunSummary multi_run(const Condition& condition, const Split& data, int n,
                          std::uint64_t base_seed, int workers, const RunCallback& on_run) {
  if (n < 1) throw InputError("multi_run: n must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n; ++i) seeds.push_back(derive_seed(base_seed, static_cast<std::uint64_t>(i)));
  return multi_run(condition, data, seeds, workers, on_run);
}

AblationKind parse_ablation_kind(const std::string& name) {
  if (name == "multiple_sweep") return AblationKind::kMultipleSweep;
  if (name == "location_grid") return AblationKind::kLocationGrid;
  if (name == "component_grid") return AblationKind::kComponentGrid;
  throw InputError("unknown ablation kind '" + name +
                   "' (multiple_sweep|location_grid|component_grid)");
}

std::string to_string(AblationKind kind) {
  switch (kind) {
    case AblationKind::kMultipleSweep:
      return "multiple_sweep";
    case AblationKind::kLocationGrid:
      return "location_grid";
    case AblationKind::kComponentGrid:
      return "component_grid";
  }
  return "";
}

std::vector<Condition> ablation_conditions(AblationKind kind, const Condition& base) {
  std::vector<Condition> out;
  auto beta_name = [](const tsrda::BetaParams& b) {
    return "beta(" + std::to_string(b.alpha) + "," + std::to_string(b.beta) + ")";
  };
  switch (kind) {
    case AblationKind::kMultipleSweep:
      for (int m = 0; m <= 6; ++m) {
        Condition c = base;
        c.method = m == 0 ? AugmentMethod::kNone : AugmentMethod::kTsrda;
        c.augment.multiple = m;
        c.name = m == 0 ? "raw" : "tsrda_m" + std::to_string(m);
        out.push_back(std::move(c));
      }
      break;
    case AblationKind::kLocationGrid: {
      const tsrda::BetaParams laws[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
      for (const auto& p : laws) {
        for (const auto& q : laws) {
          Condition c = base;
          c.method = AugmentMethod::kTsrda;
          c.augment.multiple = 3;
          c.augment.loc_p = p;
          c.augment.loc_q = q;
          c.name = "p~" + beta_name(p) + " q~" + beta_name(q);
          out.push_back(std::move(c));
        }
      }
      break;
    }
    case AblationKind::kComponentGrid:
      for (bool augmented : {false, true}) {
        for (bool attention : {false, true}) {
          Condition c = base;
          c.method = augmented ? AugmentMethod::kTsrda : AugmentMethod::kNone;
          c.model.attention_enabled = attention;
          c.name = std::string(augmented ? "tsrda" : "raw") + "+" +
                   (attention ? "tscnn-ca" : "tscnn");
          out.push_back(std::move(c));
        }
      }
      break;
  }
  return out;
}

std::vector<MultiRunSummary> ablation_suite(AblationKind kind, const Condition& base,
                                            const Split& data, int n_runs,
                                            std::uint64_t base_seed, int workers) {
  std::vector<MultiRunSummary> out;
  for (const Condition& c : ablation_conditions(kind, base)) {
    out.push_back(multi_run(c, data, n_runs, base_seed, workers));
  }
  return out;
}

}  // namespace tastenet::train
