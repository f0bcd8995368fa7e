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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "tastenet/errors.hpp"
#include "tastenet/synth.hpp"

namespace tastenet {
namespace {

double rms(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

TEST_CASE("default configuration yields 1600 labeled 21 x 256 samples") {
  const auto samples = synth::generate(synth::SynthConfig{});
  REQUIRE(samples.size() == 1600);
  int per_class[4] = {0, 0, 0, 0};
  for (const auto& s : samples) {
    CHECK(s.channels == kChannels);
    CHECK(s.timepoints == kTimepoints);
    CHECK(s.data.size() == kChannels * kTimepoints);
    ++per_class[s.label];
  }
  for (int c : per_class) CHECK(c == 400);
}

TEST_CASE("generation is a pure function of the seed") {
  synth::SynthConfig cfg;
  cfg.n_subjects = 2;
  const auto a = synth::generate(cfg);
  const auto b = synth::generate(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].data == b[i].data);
  cfg.seed = 1;
  CHECK(synth::generate(cfg)[0].data != a[0].data);
}

TEST_CASE("each class concentrates power at its frequency on its active channels") {
  synth::SynthConfig cfg;
  cfg.n_subjects = 1;
  cfg.snr = 2.0;
  const auto samples = synth::generate(cfg);
  const auto& sigs = synth::class_signatures();
  int correct = 0;
  for (const auto& s : samples) {
    int best = -1;
    double best_power = -1.0;
    for (int k = 0; k < 4; ++k) {
      const auto& sig = sigs[static_cast<std::size_t>(k)];
      double p = 0.0;
      for (std::size_t c : sig.active_channels) {
        std::span<const double> ch(s.data.data() + c * s.timepoints, s.timepoints);
        p += synth::band_power(ch, 128.0, sig.center_hz - sig.bandwidth_hz,
                               sig.center_hz + sig.bandwidth_hz);
      }
      if (p > best_power) {
        best_power = p;
        best = k;
      }
    }
    correct += best == s.label ? 1 : 0;
  }
  CHECK(correct >= 76);  // of 80
}

TEST_CASE("the signal-to-noise ratio sets the background level") {
  synth::SynthConfig cfg;
  cfg.n_subjects = 1;
  cfg.segments_per_class_per_subject = 1;
  cfg.subject_variability = 0.0;
  cfg.snr = 4.0;
  const auto rec = synth::generate_recording(cfg, 0, 128.0);
  // Channel 0 is never active, so it carries only background.
  CHECK(rms(rec.channel(0)) == doctest::Approx(synth::kSignalRms / 4.0).epsilon(1e-9));
  // An active channel carries the oscillation plus background.
  const std::size_t seg = 1280;
  auto active = rec.channel(12).subspan(0, seg);
  const double expected = std::sqrt(synth::kSignalRms * synth::kSignalRms +
                                    std::pow(synth::kSignalRms / 4.0, 2));
  CHECK(rms(active) == doctest::Approx(expected).epsilon(0.05));
  cfg.snr = std::numeric_limits<double>::infinity();
  const auto clean = synth::generate_recording(cfg, 0, 128.0);
  CHECK(rms(clean.channel(0)) == 0.0);
  CHECK(rms(clean.channel(12).subspan(0, seg)) == doctest::Approx(synth::kSignalRms).epsilon(0.01));
}

TEST_CASE("recordings carry one event per 10 s segment") {
  synth::SynthConfig cfg;
  cfg.n_subjects = 1;
  const auto rec = synth::generate_recording(cfg, 0, 256.0);
  CHECK(rec.fs == 256.0);
  CHECK(rec.channels == kChannels);
  REQUIRE(rec.events.size() == 16);
  CHECK(rec.samples() == 16 * 2560);
  for (std::size_t e = 0; e < 16; ++e) {
    CHECK(rec.events[e].onset_sample == e * 2560);
    CHECK(rec.events[e].label == static_cast<int>(e / 4));
  }
  CHECK(rec.channel_names.front() == "Fz");
}

TEST_CASE("band power of a pure tone peaks at its frequency") {
  std::vector<double> x(256);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * M_PI * 16.0 * i / 128.0);
  CHECK(synth::band_power(x, 128.0, 15.0, 17.0) > 100 * synth::band_power(x, 128.0, 30.0, 40.0));
}

TEST_CASE("invalid configurations are rejected") {
  synth::SynthConfig cfg;
  cfg.n_subjects = 0;
  CHECK_THROWS_AS(synth::generate(cfg), InputError);
  cfg = {};
  cfg.snr = -1.0;
  CHECK_THROWS_AS(synth::generate(cfg), InputError);
  cfg = {};
  cfg.subject_variability = 1.5;
  CHECK_THROWS_AS(synth::generate(cfg), InputError);
}

}  // namespace
}  // namespace tastenet
