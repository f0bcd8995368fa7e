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

#include "tastenet/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "tastenet/errors.hpp"

namespace tastenet::config {

namespace {

using nlohmann::json;

// Visits the members of one section, rejecting unknown keys.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.contains(key())) {
      node_ = &doc.at(key());
      if (!node_->is_object()) throw ConfigError(path_, "expected an object");
    }
  }

  template <typename Fn>
  void field(const std::string& name, Fn&& read) {
    known_.push_back(name);
    if (node_ && node_->contains(name)) read(node_->at(name), path_ + "." + name);
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [k, v] : node_->items()) {
      if (std::find(known_.begin(), known_.end(), k) == known_.end()) {
        throw ConfigError(path_ + "." + k, "unknown key");
      }
    }
  }

 private:
  std::string key() const { return path_; }

  std::string path_;
  const json* node_ = nullptr;
  std::vector<std::string> known_;
};

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) {
    throw ConfigError(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  return x;
}

std::uint64_t as_seed(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  throw ConfigError(path, "expected a non-negative integer seed");
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::pair<double, double> as_band(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(path, "expected [low_hz, high_hz]");
  }
  const double lo = v[0].get<double>(), hi = v[1].get<double>();
  if (!(lo > 0.0 && lo < hi)) throw ConfigError(path, "need 0 < low_hz < high_hz");
  return {lo, hi};
}

tsrda::BetaParams as_beta(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ConfigError(path, "expected [alpha, beta]");
  }
  tsrda::BetaParams b{v[0].get<int>(), v[1].get<int>()};
  try {
    tsrda::validate(b);
  } catch (const InputError& e) {
    throw ConfigError(path, e.what());
  }
  return b;
}

// A positive number, or a "p/q" string.
double as_rational(const json& v, const std::string& path) {
  double x = 0.0;
  if (v.is_number()) {
    x = v.get<double>();
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      x = slash == std::string::npos
              ? std::stod(s)
              : std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::exception&) {
      throw ConfigError(path, "expected a number or 'p/q'");
    }
  } else {
    throw ConfigError(path, "expected a number or 'p/q'");
  }
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(path, "must be positive");
  return x;
}

template <typename Fn>
auto rethrow_as_config(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

PipelineConfig parse(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  static const char* kSections[] = {"synth", "preprocess", "split", "augment",
                                    "model", "train",      "ablate"};
  for (const auto& [k, v] : doc.items()) {
    if (std::find(std::begin(kSections), std::end(kSections), k) == std::end(kSections)) {
      throw ConfigError(k, "unknown section");
    }
  }
  PipelineConfig c;

  Section synth(doc, "synth");
  synth.field("n_subjects", [&](const json& v, const std::string& p) {
    c.synth.n_subjects = static_cast<int>(as_integer(v, p, 1, 100000));
  });
  synth.field("segments_per_class_per_subject", [&](const json& v, const std::string& p) {
    c.synth.segments_per_class_per_subject = static_cast<int>(as_integer(v, p, 1, 100000));
  });
  synth.field("snr", [&](const json& v, const std::string& p) {
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) {
      c.synth.snr = std::numeric_limits<double>::infinity();
      return;
    }
    c.synth.snr = as_number(v, p);
    if (!(c.synth.snr >= 0.0)) throw ConfigError(p, "must be non-negative");
  });
  synth.field("subject_variability", [&](const json& v, const std::string& p) {
    c.synth.subject_variability = as_number(v, p);
    if (!(c.synth.subject_variability >= 0.0 && c.synth.subject_variability <= 1.0)) {
      throw ConfigError(p, "must lie in [0, 1]");
    }
  });
  synth.field("seed", [&](const json& v, const std::string& p) { c.synth.seed = as_seed(v, p); });
  synth.finish();

  Section pre(doc, "preprocess");
  auto& po = c.preprocess.options;
  pre.field("fs", [&](const json& v, const std::string& p) {
    c.preprocess.fs = as_number(v, p);
    if (!(c.preprocess.fs > 0.0)) throw ConfigError(p, "must be positive");
  });
  pre.field("n_taps", [&](const json& v, const std::string& p) {
    po.n_taps = static_cast<std::size_t>(as_integer(v, p, 1, 1 << 20));
    if (po.n_taps % 2 == 0) throw ConfigError(p, "must be odd");
  });
  pre.field("bandpass", [&](const json& v, const std::string& p) {
    std::tie(po.bandpass_low_hz, po.bandpass_high_hz) = as_band(v, p);
  });
  pre.field("notch", [&](const json& v, const std::string& p) {
    std::tie(po.notch_low_hz, po.notch_high_hz) = as_band(v, p);
  });
  pre.field("downsample", [&](const json& v, const std::string& p) {
    po.downsample_factor = static_cast<int>(as_integer(v, p, 1, 1024));
  });
  pre.field("window_s", [&](const json& v, const std::string& p) {
    po.epoch.window_s = as_number(v, p);
  });
  pre.field("segment_s", [&](const json& v, const std::string& p) {
    po.epoch.segment_s = as_number(v, p);
  });
  pre.field("zscore", [&](const json& v, const std::string& p) { po.zscore = as_bool(v, p); });
  pre.finish();

  Section sp(doc, "split");
  sp.field("seed", [&](const json& v, const std::string& p) { c.split.seed = as_seed(v, p); });
  sp.field("train_parts", [&](const json& v, const std::string& p) {
    c.split.train_parts = static_cast<int>(as_integer(v, p, 1, 1000));
  });
  sp.field("test_parts", [&](const json& v, const std::string& p) {
    c.split.test_parts = static_cast<int>(as_integer(v, p, 1, 1000));
  });
  sp.finish();

  Section aug(doc, "augment");
  aug.field("method", [&](const json& v, const std::string& p) {
    c.augment.method =
        rethrow_as_config(p, [&] { return train::parse_augment_method(as_string(v, p)); });
  });
  aug.field("multiple", [&](const json& v, const std::string& p) {
    c.augment.tsrda.multiple = static_cast<int>(as_integer(v, p, 0, 1000));
  });
  aug.field("loc_p", [&](const json& v, const std::string& p) {
    c.augment.tsrda.loc_p = as_beta(v, p);
  });
  aug.field("loc_q", [&](const json& v, const std::string& p) {
    c.augment.tsrda.loc_q = as_beta(v, p);
  });
  aug.field("size_w", [&](const json& v, const std::string& p) {
    c.augment.tsrda.size_w = as_beta(v, p);
  });
  aug.field("size_h", [&](const json& v, const std::string& p) {
    c.augment.tsrda.size_h = as_beta(v, p);
  });
  aug.field("seed", [&](const json& v, const std::string& p) {
    c.augment.tsrda.seed = as_seed(v, p);
  });
  aug.field("sigma", [&](const json& v, const std::string& p) {
    if (v.is_null()) return;
    c.augment.sigma = as_number(v, p);
    if (!(*c.augment.sigma >= 0.0)) throw ConfigError(p, "must be non-negative");
  });
  aug.finish();
  if (c.augment.method == train::AugmentMethod::kGaussian && !c.augment.sigma) {
    throw ConfigError("augment.sigma", "required when augment.method is gaussian");
  }

  Section mdl(doc, "model");
  mdl.field("attention", [&](const json& v, const std::string& p) {
    c.model.spec.attention_enabled = as_bool(v, p);
  });
  mdl.field("width_mult", [&](const json& v, const std::string& p) {
    c.model.spec.width_mult = as_rational(v, p);
  });
  mdl.field("seed", [&](const json& v, const std::string& p) { c.model.seed = as_seed(v, p); });
  mdl.finish();

  Section tr(doc, "train");
  tr.field("epochs", [&](const json& v, const std::string& p) {
    c.train.epochs = static_cast<int>(as_integer(v, p, 0, 1000000));
  });
  tr.field("lr", [&](const json& v, const std::string& p) {
    c.train.lr = as_number(v, p);
    if (!(c.train.lr > 0.0)) throw ConfigError(p, "must be positive");
  });
  tr.field("weight_decay", [&](const json& v, const std::string& p) {
    c.train.weight_decay = as_number(v, p);
    if (!(c.train.weight_decay >= 0.0)) throw ConfigError(p, "must be non-negative");
  });
  tr.field("train_batch", [&](const json& v, const std::string& p) {
    c.train.train_batch = static_cast<int>(as_integer(v, p, 1, 1 << 20));
  });
  tr.field("eval_batch", [&](const json& v, const std::string& p) {
    c.train.eval_batch = static_cast<int>(as_integer(v, p, 1, 1 << 20));
  });
  tr.field("seed", [&](const json& v, const std::string& p) { c.train.seed = as_seed(v, p); });
  tr.finish();

  Section ab(doc, "ablate");
  ab.field("kind", [&](const json& v, const std::string& p) {
    c.ablate.kind =
        rethrow_as_config(p, [&] { return train::parse_ablation_kind(as_string(v, p)); });
  });
  ab.field("runs", [&](const json& v, const std::string& p) {
    c.ablate.runs = static_cast<int>(as_integer(v, p, 1, 1000));
  });
  ab.field("base_seed", [&](const json& v, const std::string& p) {
    c.ablate.base_seed = as_seed(v, p);
  });
  ab.field("workers", [&](const json& v, const std::string& p) {
    c.ablate.workers = static_cast<int>(as_integer(v, p, 1, 256));
  });
  ab.field("holdout_validation", [&](const json& v, const std::string& p) {
    c.ablate.holdout_validation = as_bool(v, p);
  });
  ab.finish();
  return c;
}

json to_json(const PipelineConfig& c) {
  auto beta = [](const tsrda::BetaParams& b) { return json::array({b.alpha, b.beta}); };
  const auto& po = c.preprocess.options;
  json snr = std::isinf(c.synth.snr) ? json("inf") : json(c.synth.snr);
  return json{
      {"synth",
       {{"n_subjects", c.synth.n_subjects},
        {"segments_per_class_per_subject", c.synth.segments_per_class_per_subject},
        {"snr", snr},
        {"subject_variability", c.synth.subject_variability},
        {"seed", c.synth.seed}}},
      {"preprocess",
       {{"fs", c.preprocess.fs},
        {"n_taps", po.n_taps},
        {"bandpass", {po.bandpass_low_hz, po.bandpass_high_hz}},
        {"notch", {po.notch_low_hz, po.notch_high_hz}},
        {"downsample", po.downsample_factor},
        {"window_s", po.epoch.window_s},
        {"segment_s", po.epoch.segment_s},
        {"zscore", po.zscore}}},
      {"split",
       {{"seed", c.split.seed},
        {"train_parts", c.split.train_parts},
        {"test_parts", c.split.test_parts}}},
      {"augment",
       {{"method", train::to_string(c.augment.method)},
        {"multiple", c.augment.tsrda.multiple},
        {"loc_p", beta(c.augment.tsrda.loc_p)},
        {"loc_q", beta(c.augment.tsrda.loc_q)},
        {"size_w", beta(c.augment.tsrda.size_w)},
        {"size_h", beta(c.augment.tsrda.size_h)},
        {"seed", c.augment.tsrda.seed},
        {"sigma", c.augment.sigma ? json(*c.augment.sigma) : json(nullptr)}}},
      {"model",
       {{"attention", c.model.spec.attention_enabled},
        {"width_mult", c.model.spec.width_mult},
        {"seed", c.model.seed}}},
      {"train",
       {{"epochs", c.train.epochs},
        {"lr", c.train.lr},
        {"weight_decay", c.train.weight_decay},
        {"train_batch", c.train.train_batch},
        {"eval_batch", c.train.eval_batch},
        {"seed", c.train.seed}}},
      {"ablate",
       {{"kind", train::to_string(c.ablate.kind)},
        {"runs", c.ablate.runs},
        {"base_seed", c.ablate.base_seed},
        {"workers", c.ablate.workers},
        {"holdout_validation", c.ablate.holdout_validation}}},
  };
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must look like dotted.key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos
                                                                         : dot - start);
    if (key.empty()) throw ConfigError(path, "empty key component");
    if (!node->is_object()) throw ConfigError(path, "cannot descend into a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

json load_document(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config '" + path + "'");
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
  }
  for (const std::string& o : overrides) apply_override(doc, o);
  return doc;
}

}  // namespace tastenet::config
