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

#include "tastenet/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "tastenet/config.hpp"
#include "tastenet/dsp.hpp"
#include "tastenet/eegb.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/manifest.hpp"
#include "tastenet/model.hpp"
#include "tastenet/recording_io.hpp"
#include "tastenet/synth.hpp"
#include "tastenet/training.hpp"
#include "tastenet/tsrda.hpp"

namespace tastenet::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Options = std::map<std::string, std::string>;

const std::string& required(const Options& options, const std::string& key) {
  auto it = options.find(key);
  if (it == options.end() || it->second.empty()) throw InputError("missing option --" + key);
  return it->second;
}

std::string optional(const Options& options, const std::string& key) {
  auto it = options.find(key);
  return it == options.end() ? std::string() : it->second;
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

json metrics_json(const train::Metrics& m) {
  return json{{"accuracy", m.accuracy}, {"f1", m.f1}, {"kappa", m.kappa}};
}

json stat_json(const train::Stat& s) { return json{{"mean", s.mean}, {"std", s.stddev}}; }

void write_history_header(std::ostream& csv) {
  csv << "condition,run,epoch,train_loss,acc,f1,kappa\n";
}

void write_history(std::ostream& csv, const std::string& condition, std::size_t run,
                   const train::RunResult& result) {
  csv << std::setprecision(17);
  for (const train::EpochRecord& e : result.history) {
    csv << condition << ',' << run << ',' << e.epoch << ',' << e.train_loss << ','
        << e.test.accuracy << ',' << e.test.f1 << ',' << e.test.kappa << '\n';
  }
}

void write_json(const std::string& path, const json& doc) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
}

void finish_manifest(manifest::RunManifest& m, const Options& options,
                     const std::string& default_path) {
  std::string path = optional(options, "manifest");
  if (path.empty()) path = default_path;
  if (path.empty()) return;
  ensure_parent(path);
  m.write(path);
}

std::vector<EegSample> read_single_labeled(const std::string& path) {
  const eegb::Dataset d = eegb::read(path);
  return to_single_label(d.samples);
}

int cmd_synth(const config::PipelineConfig& cfg, const Options& options,
              manifest::RunManifest& m, std::ostream& out) {
  const std::string output = required(options, "output");
  const std::vector<EegSample> samples = synth::generate(cfg.synth);
  ensure_parent(output);
  eegb::write(output, eegb::from_samples(samples, 128.0));
  m.add_output("dataset", output);
  const std::string rec_dir = optional(options, "recordings");
  if (!rec_dir.empty()) {
    fs::create_directories(rec_dir);
    for (int s = 0; s < cfg.synth.n_subjects; ++s) {
      const ContinuousRecording rec = synth::generate_recording(cfg.synth, s, cfg.preprocess.fs);
      const std::string stem = (fs::path(rec_dir) / ("subject" + std::to_string(s))).string();
      io::write_recording(rec, stem + ".csv", stem + ".events.json");
      m.add_output("recording" + std::to_string(s), stem + ".csv");
      m.add_output("events" + std::to_string(s), stem + ".events.json");
    }
  }
  m.seeds["synth"] = cfg.synth.seed;
  out << "wrote " << samples.size() << " samples to " << output << '\n';
  finish_manifest(m, options, "");
  return kOk;
}

int cmd_preprocess(const config::PipelineConfig& cfg, const Options& options,
                   manifest::RunManifest& m, std::ostream& out) {
  const std::string csv = required(options, "csv");
  const std::string events = required(options, "events");
  const std::string output = required(options, "output");
  const std::string subject_text = optional(options, "subject");
  const int subject = subject_text.empty() ? 0 : std::stoi(subject_text);
  const ContinuousRecording rec = io::read_recording(csv, events, cfg.preprocess.fs);
  m.add_input("recording", csv);
  m.add_input("events", events);
  const std::vector<EegSample> samples = dsp::preprocess(rec, cfg.preprocess.options, subject);
  const double out_fs = cfg.preprocess.fs / cfg.preprocess.options.downsample_factor;
  ensure_parent(output);
  eegb::write(output, eegb::from_samples(samples, out_fs));
  m.add_output("dataset", output);
  out << "wrote " << samples.size() << " samples to " << output << '\n';
  finish_manifest(m, options, "");
  return kOk;
}

int cmd_split(const config::PipelineConfig& cfg, const Options& options,
              manifest::RunManifest& m, std::ostream& out) {
  const std::string input = required(options, "input");
  const std::string train_out = required(options, "train-out");
  const std::string test_out = required(options, "test-out");
  const eegb::Dataset d = eegb::read(input);
  m.add_input("dataset", input);
  const std::vector<EegSample> samples = to_single_label(d.samples);
  const train::Split parts =
      train::split(samples, cfg.split.seed, cfg.split.train_parts, cfg.split.test_parts);
  ensure_parent(train_out);
  ensure_parent(test_out);
  eegb::write(train_out, eegb::from_samples(parts.train, d.fs));
  eegb::write(test_out, eegb::from_samples(parts.test, d.fs));
  m.add_output("train", train_out);
  m.add_output("test", test_out);
  m.seeds["split"] = cfg.split.seed;
  out << "train " << parts.train.size() << ", test " << parts.test.size() << '\n';
  finish_manifest(m, options, "");
  return kOk;
}

int cmd_augment(const config::PipelineConfig& cfg, const Options& options,
                manifest::RunManifest& m, std::ostream& out) {
  const std::string input = required(options, "input");
  const std::string output = required(options, "output");
  const eegb::Dataset d = eegb::read(input);
  m.add_input("train", input);
  const std::vector<EegSample> train_set = to_single_label(d.samples);
  std::vector<DualLabelSample> augmented;
  switch (cfg.augment.method) {
    case train::AugmentMethod::kNone:
      augmented = to_dual_label(train_set);
      break;
    case train::AugmentMethod::kTsrda:
      augmented = tsrda::augment_set(train_set, cfg.augment.tsrda);
      break;
    case train::AugmentMethod::kGaussian:
      augmented = tsrda::gaussian_noise_baseline(train_set, *cfg.augment.sigma,
                                                 cfg.augment.tsrda.multiple, cfg.augment.tsrda.seed);
      break;
  }
  ensure_parent(output);
  eegb::write(output, eegb::from_samples(augmented, d.fs));
  m.add_output("augmented", output);
  m.seeds["augment"] = cfg.augment.tsrda.seed;
  out << "wrote " << augmented.size() << " samples to " << output << '\n';
  finish_manifest(m, options, "");
  return kOk;
}

int cmd_train(const config::PipelineConfig& cfg, const Options& options,
              manifest::RunManifest& m, std::ostream& out) {
  const std::string train_path = required(options, "train");
  const std::string test_path = required(options, "test");
  const std::string out_dir = required(options, "out-dir");
  const eegb::Dataset train_data = eegb::read(train_path);
  m.add_input("train", train_path);
  const std::vector<EegSample> test = read_single_labeled(test_path);
  m.add_input("test", test_path);
  fs::create_directories(out_dir);

  model::Tscnn net = model::Tscnn::build(cfg.model.spec, cfg.model.seed);
  const std::string history_path = (fs::path(out_dir) / "history.csv").string();
  std::ofstream history(history_path);
  write_history_header(history);
  const train::RunResult result =
      train::train(net, train_data.samples, test, cfg.train, {}, [&](const train::EpochRecord& e) {
        out << "epoch " << e.epoch << " loss " << e.train_loss << " acc " << e.test.accuracy
            << " f1 " << e.test.f1 << " kappa " << e.test.kappa << std::endl;
      });
  write_history(history, "train", 0, result);
  history.close();

  const std::string checkpoint = (fs::path(out_dir) / "model.tsnn").string();
  net.save(checkpoint);
  json summary{{"epochs", result.history.size()},
               {"best", metrics_json({result.best_accuracy, result.best_f1, result.best_kappa})},
               {"final", result.history.empty() ? json(nullptr)
                                                : metrics_json(result.history.back().test)},
               {"parameters", net.parameter_count()}};
  const std::string summary_path = (fs::path(out_dir) / "summary.json").string();
  write_json(summary_path, summary);
  m.add_output("checkpoint", checkpoint);
  m.add_output("history", history_path);
  m.add_output("summary", summary_path);
  m.seeds["model"] = cfg.model.seed;
  m.seeds["shuffle"] = cfg.train.seed;
  finish_manifest(m, options, (fs::path(out_dir) / "manifest.json").string());
  return kOk;
}

int cmd_eval(const config::PipelineConfig& cfg, const Options& options,
             manifest::RunManifest& m, std::ostream& out) {
  const std::string checkpoint = required(options, "checkpoint");
  const std::string test_path = required(options, "test");
  const model::Tscnn net = model::Tscnn::load(checkpoint);
  m.add_input("checkpoint", checkpoint);
  const std::vector<EegSample> test = read_single_labeled(test_path);
  m.add_input("test", test_path);
  const train::Evaluation ev = train::evaluate(net, test, cfg.train.eval_batch);
  json confusion = json::array();
  for (std::size_t i = 0; i < ev.confusion.classes(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < ev.confusion.classes(); ++j) row.push_back(ev.confusion.at(i, j));
    confusion.push_back(row);
  }
  json doc = metrics_json(ev.metrics);
  doc["n"] = test.size();
  doc["confusion"] = confusion;
  out << doc.dump(2) << '\n';
  const std::string output = optional(options, "output");
  if (!output.empty()) {
    write_json(output, doc);
    m.add_output("metrics", output);
  }
  finish_manifest(m, options, "");
  return kOk;
}

int cmd_ablate(const config::PipelineConfig& cfg, const Options& options,
               manifest::RunManifest& m, std::ostream& out) {
  const std::string data_path = required(options, "data");
  const std::string out_dir = required(options, "out-dir");
  const std::vector<EegSample> samples = read_single_labeled(data_path);
  m.add_input("data", data_path);
  const train::Split data =
      train::split(samples, cfg.split.seed, cfg.split.train_parts, cfg.split.test_parts);
  fs::create_directories(out_dir);

  train::Condition base;
  base.method = cfg.augment.method;
  base.augment = cfg.augment.tsrda;
  base.noise_sigma = cfg.augment.sigma.value_or(0.0);
  base.model = cfg.model.spec;
  base.train = cfg.train;
  base.holdout_validation = cfg.ablate.holdout_validation;

  const std::string results_path = (fs::path(out_dir) / "results.csv").string();
  std::ofstream results(results_path);
  write_history_header(results);
  json summary = json::array();
  for (const train::Condition& c : train::ablation_conditions(cfg.ablate.kind, base)) {
    const train::MultiRunSummary s = train::multi_run(
        c, data, cfg.ablate.runs, cfg.ablate.base_seed, cfg.ablate.workers,
        [&](std::size_t run, const train::RunResult& r) {
          const train::Metrics h = r.headline();
          out << c.name << " run " << run << ": acc " << h.accuracy << " f1 " << h.f1 << " kappa "
              << h.kappa << std::endl;
        });
    for (std::size_t i = 0; i < s.runs.size(); ++i) write_history(results, c.name, i, s.runs[i]);
    summary.push_back({{"condition", s.condition},
                       {"runs", s.runs.size()},
                       {"accuracy", stat_json(s.accuracy)},
                       {"f1", stat_json(s.f1)},
                       {"kappa", stat_json(s.kappa)}});
    out << c.name << ": acc " << s.accuracy.mean << " +/- " << s.accuracy.stddev << '\n';
  }
  results.close();
  const std::string summary_path = (fs::path(out_dir) / "summary.json").string();
  write_json(summary_path, json{{"kind", train::to_string(cfg.ablate.kind)},
                                {"conditions", summary}});
  m.add_output("results", results_path);
  m.add_output("summary", summary_path);
  m.seeds["base_seed"] = cfg.ablate.base_seed;
  m.seeds["split"] = cfg.split.seed;
  finish_manifest(m, options, (fs::path(out_dir) / "manifest.json").string());
  return kOk;
}

}  // namespace

int execute(const std::string& command, const json& config_doc, const Options& options,
            std::ostream& out, std::ostream& err) {
  try {
    const config::PipelineConfig cfg = config::parse(config_doc);
    manifest::RunManifest m;
    m.command = command;
    m.config = config::to_json(cfg);
    m.options = options;
    m.options.erase("manifest");
    if (command == "synth") return cmd_synth(cfg, options, m, out);
    if (command == "preprocess") return cmd_preprocess(cfg, options, m, out);
    if (command == "split") return cmd_split(cfg, options, m, out);
    if (command == "augment") return cmd_augment(cfg, options, m, out);
    if (command == "train") return cmd_train(cfg, options, m, out);
    if (command == "eval") return cmd_eval(cfg, options, m, out);
    if (command == "ablate") return cmd_ablate(cfg, options, m, out);
    err << "error: unknown command '" << command << "'\n";
    return kFailure;
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << '\n';
    return kBadConfig;
  } catch (const FormatError& e) {
    err << "malformed file, " << e.what() << '\n';
    return kBadFile;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << '\n';
    return kShapeViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Taste-EEG augmentation and classification toolkit", "tastenet"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  Options options;

  // Registers a string option that lands in `options` under its long name.
  std::map<std::string, std::string> values;
  auto add = [&](CLI::App* sub, const std::string& name, const std::string& help, bool req) {
    auto* opt = sub->add_option("--" + name, values[sub->get_name() + ":" + name], help);
    if (req) opt->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON config file");
    sub->add_option("--set", overrides, "Override a config key: dotted.key=value");
    add(sub, "manifest", "Where to write the run manifest", false);
  };

  auto* synth_cmd = app.add_subcommand("synth", "Generate the synthetic dataset");
  common(synth_cmd);
  add(synth_cmd, "output", "EEGB output path", true);
  add(synth_cmd, "recordings", "Also write 256 Hz CSV+JSON recordings here", false);

  auto* pre_cmd = app.add_subcommand("preprocess", "Filter, downsample and epoch a recording");
  common(pre_cmd);
  add(pre_cmd, "csv", "Recording CSV", true);
  add(pre_cmd, "events", "Events JSON sidecar", true);
  add(pre_cmd, "output", "EEGB output path", true);
  add(pre_cmd, "subject", "Subject id stamped on the samples", false);

  auto* split_cmd = app.add_subcommand("split", "Stratified train/test split of an EEGB file");
  common(split_cmd);
  add(split_cmd, "input", "EEGB dataset", true);
  add(split_cmd, "train-out", "EEGB output for the training part", true);
  add(split_cmd, "test-out", "EEGB output for the test part", true);

  auto* aug_cmd = app.add_subcommand("augment", "Augment a training set");
  common(aug_cmd);
  add(aug_cmd, "input", "EEGB training set", true);
  add(aug_cmd, "output", "EEGB output path", true);

  auto* train_cmd = app.add_subcommand("train", "Train a classifier");
  common(train_cmd);
  add(train_cmd, "train", "EEGB training set (may be dual-labeled)", true);
  add(train_cmd, "test", "EEGB test set", true);
  add(train_cmd, "out-dir", "Directory for checkpoint, history, summary, manifest", true);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  common(eval_cmd);
  add(eval_cmd, "checkpoint", "TSNN checkpoint", true);
  add(eval_cmd, "test", "EEGB test set", true);
  add(eval_cmd, "output", "Metrics JSON output path", false);

  auto* ablate_cmd = app.add_subcommand("ablate", "Run an ablation suite");
  common(ablate_cmd);
  add(ablate_cmd, "data", "EEGB dataset to split and train on", true);
  add(ablate_cmd, "out-dir", "Directory for results.csv, summary.json, manifest", true);

  std::string manifest_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "Manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (replay_cmd->parsed()) {
      const manifest::RunManifest m = manifest::RunManifest::read(manifest_path);
      return execute(m.command, m.config, m.options, out, err);
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string prefix = sub->get_name() + ":";
    for (const auto& [key, value] : values) {
      if (key.rfind(prefix, 0) == 0 && !value.empty()) options[key.substr(prefix.size())] = value;
    }
    const json doc = config::load_document(config_path, overrides);
    return execute(sub->get_name(), doc, options, out, err);
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace tastenet::cli
