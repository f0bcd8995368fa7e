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

#include "tastenet/synth.hpp"

#include <cmath>
#include <numbers>
#include <span>

#include "tastenet/dsp.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/rng.hpp"

namespace tastenet::synth {

namespace {

constexpr double kSegmentSeconds = 10.0;

// Paul Kellet's economy pink filter: -3 dB/octave over the EEG band.
std::vector<double> pink_noise(std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double white = rng.normal();
    b0 = 0.99765 * b0 + white * 0.0990460;
    b1 = 0.96300 * b1 + white * 0.2965164;
    b2 = 0.57000 * b2 + white * 1.0526913;
    out[i] = b0 + b1 + b2 + white * 0.1848;
  }
  return out;
}

double rms(std::span<const double> x) {
  double ss = 0.0;
  for (double v : x) ss += v * v;
  return std::sqrt(ss / static_cast<double>(x.size()));
}

}  // namespace

const std::array<ClassSignature, kClasses>& class_signatures() {
  static const std::array<ClassSignature, kClasses> signatures = {{
      {6.0, 2.0, {12, 13, 14, 15, 16}},
      {11.0, 2.0, {14, 15, 16, 17, 18}},
      {19.0, 2.0, {16, 17, 18, 19, 20}},
      {27.0, 2.0, {12, 14, 16, 18, 20}},
  }};
  return signatures;
}

void validate(const SynthConfig& config) {
  if (config.n_subjects < 1) throw InputError("synth: n_subjects must be positive");
  if (config.segments_per_class_per_subject < 1) {
    throw InputError("synth: segments_per_class_per_subject must be positive");
  }
  if (!(config.snr >= 0.0)) throw InputError("synth: snr must be non-negative");
  if (!(config.subject_variability >= 0.0 && config.subject_variability <= 1.0)) {
    throw InputError("synth: subject_variability must lie in [0, 1]");
  }
}

ContinuousRecording generate_recording(const SynthConfig& config, int subject, double fs) {
  validate(config);
  const auto seg_len = static_cast<std::size_t>(std::llround(kSegmentSeconds * fs));
  const int n_segments = kClasses * config.segments_per_class_per_subject;
  const std::size_t total = seg_len * static_cast<std::size_t>(n_segments);

  ContinuousRecording rec;
  rec.fs = fs;
  rec.channels = kChannels;
  rec.data.assign(kChannels * total, 0.0);
  for (std::string_view name : kChannelNames) rec.channel_names.emplace_back(name);

  // Subject traits: per class a frequency offset inside the band and a gain
  // per active channel.
  Rng subject_rng(config.seed, static_cast<std::uint64_t>(subject));
  const double v = config.subject_variability;
  std::array<double, kClasses> freq{};
  std::array<std::vector<double>, kClasses> gain;
  for (int k = 0; k < kClasses; ++k) {
    const ClassSignature& sig = class_signatures()[static_cast<std::size_t>(k)];
    freq[static_cast<std::size_t>(k)] =
        sig.center_hz + v * subject_rng.uniform(-0.5, 0.5) * sig.bandwidth_hz;
    for (std::size_t c = 0; c < sig.active_channels.size(); ++c) {
      gain[static_cast<std::size_t>(k)].push_back(1.0 + v * subject_rng.uniform(-0.5, 0.5));
    }
  }

  const bool noiseless = std::isinf(config.snr);
  const double signal_amp = config.snr == 0.0 ? 0.0 : kSignalRms * std::sqrt(2.0);
  const double noise_rms = noiseless ? 0.0 : (config.snr == 0.0 ? kSignalRms
                                                                 : kSignalRms / config.snr);
  for (int s = 0; s < n_segments; ++s) {
    const int label = s / config.segments_per_class_per_subject;
    const std::size_t onset = static_cast<std::size_t>(s) * seg_len;
    rec.events.push_back({onset, label});
    const ClassSignature& sig = class_signatures()[static_cast<std::size_t>(label)];
    Rng rng(derive_seed(config.seed, 1000003ULL * static_cast<std::uint64_t>(subject + 1)),
            static_cast<std::uint64_t>(s));
    for (std::size_t c = 0; c < kChannels; ++c) {
      auto out = rec.channel(c).subspan(onset, seg_len);
      if (noise_rms > 0.0) {
        std::vector<double> noise = pink_noise(seg_len, rng);
        double mean = 0.0;
        for (double x : noise) mean += x;
        mean /= static_cast<double>(seg_len);
        for (double& x : noise) x -= mean;
        const double scale = noise_rms / rms(noise);
        for (std::size_t i = 0; i < seg_len; ++i) out[i] = noise[i] * scale;
      }
    }
    for (std::size_t a = 0; a < sig.active_channels.size(); ++a) {
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double amp = signal_amp * gain[static_cast<std::size_t>(label)][a];
      const double f = freq[static_cast<std::size_t>(label)];
      auto out = rec.channel(sig.active_channels[a]).subspan(onset, seg_len);
      for (std::size_t i = 0; i < seg_len; ++i) {
        out[i] += amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase);
      }
    }
  }
  return rec;
}

std::vector<EegSample> generate(const SynthConfig& config) {
  validate(config);
  std::vector<EegSample> out;
  for (int subject = 0; subject < config.n_subjects; ++subject) {
    const ContinuousRecording rec = generate_recording(config, subject, 128.0);
    std::vector<EegSample> samples = dsp::epoch(rec, dsp::EpochOptions{}, subject);
    for (EegSample& s : samples) out.push_back(std::move(s));
  }
  return out;
}

double band_power(std::span<const double> signal, double fs, double lo_hz, double hi_hz) {
  const std::size_t n = signal.size();
  double total = 0.0;
  int bins = 0;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (f < lo_hz || f > hi_hz) continue;
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * i) /
                           static_cast<double>(n);
      re += signal[i] * std::cos(angle);
      im -= signal[i] * std::sin(angle);
    }
    total += (re * re + im * im) / static_cast<double>(n);
    ++bins;
  }
  return bins == 0 ? 0.0 : total / bins;
}

}  // namespace tastenet::synth
