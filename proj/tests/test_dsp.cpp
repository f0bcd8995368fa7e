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
#include <complex>
#include <numbers>

#include "tastenet/dsp.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/rng.hpp"

namespace tastenet {
namespace {

using dsp::FilterKind;

double to_db(double gain) { return 20.0 * std::log10(gain); }

std::vector<double> tone(double hz, double fs, std::size_t n, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / fs + phase);
  }
  return x;
}

double rms(std::span<const double> x, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += x[i] * x[i];
  return std::sqrt(s / static_cast<double>(to - from));
}

TEST_CASE("design rejects even tap counts and bad bands") {
  CHECK_THROWS_AS(dsp::design_fir(FilterKind::kBandpass, 1, 40, 256, 512), InputError);
  CHECK_THROWS_AS(dsp::design_fir(FilterKind::kBandpass, 40, 1, 256), InputError);
  CHECK_THROWS_AS(dsp::design_fir(FilterKind::kBandpass, 0, 40, 256), InputError);
  CHECK_THROWS_AS(dsp::design_fir(FilterKind::kBandpass, 1, 128, 256), InputError);
}

TEST_CASE("taps are symmetric and the bandpass has zero DC gain") {
  for (auto kind : {FilterKind::kBandpass, FilterKind::kBandstop}) {
    const auto f = dsp::design_fir(kind, 0.5, 50.0, 256.0);
    REQUIRE(f.taps.size() == dsp::kDefaultTaps);
    for (std::size_t i = 0; i < f.taps.size(); ++i) {
      CHECK(f.taps[i] == doctest::Approx(f.taps[f.taps.size() - 1 - i]).epsilon(1e-15));
    }
  }
  const auto bp = dsp::design_fir(FilterKind::kBandpass, 0.5, 50.0, 256.0);
  double dc = 0.0;
  for (double t : bp.taps) dc += t;
  CHECK(std::abs(dc) < 1e-12);
}

TEST_CASE("magnitude response matches a direct DFT of the taps") {
  const auto f = dsp::design_fir(FilterKind::kBandstop, 49.0, 51.0, 256.0, 101);
  for (double hz : {0.0, 10.0, 49.5, 50.0, 90.0, 127.0}) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < f.taps.size(); ++n) {
      const double angle = -2.0 * std::numbers::pi * hz * static_cast<double>(n) / 256.0;
      acc += f.taps[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    CHECK(dsp::magnitude_response(f, hz) == doctest::Approx(std::abs(acc)).epsilon(1e-12));
  }
}

TEST_CASE("default filters meet the passband and stopband targets") {
  const auto notch = dsp::design_fir(FilterKind::kBandstop, 49.0, 51.0, 256.0);
  const auto band = dsp::design_fir(FilterKind::kBandpass, 0.5, 50.0, 256.0);
  CHECK(to_db(dsp::magnitude_response(notch, 50.0)) <= -30.0);
  CHECK(std::abs(to_db(dsp::magnitude_response(band, 25.0))) <= 1.0);
  CHECK(std::abs(to_db(dsp::magnitude_response(notch, 25.0))) <= 1.0);
  CHECK(dsp::magnitude_response(band, 0.0) <= 0.01);
}

TEST_CASE("zero-phase filtering keeps a passband tone aligned") {
  const auto band = dsp::design_fir(FilterKind::kBandpass, 0.5, 50.0, 256.0);
  const auto x = tone(10.0, 256.0, 2048, 0.3);
  const auto y = dsp::filtfilt(band.taps, x);
  REQUIRE(y.size() == x.size());
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -20; lag <= 20; ++lag) {
    double c = 0.0;
    for (std::size_t i = 512; i < 1536; ++i) c += x[i] * y[static_cast<std::size_t>(static_cast<int>(i) + lag)];
    if (c > best) {
      best = c;
      best_lag = lag;
    }
  }
  CHECK(best_lag == 0);
  for (std::size_t i = 512; i < 1536; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(0.03).scale(1.0));
}

TEST_CASE("filtering removes DC and the mains line") {
  const auto band = dsp::design_fir(FilterKind::kBandpass, 0.5, 50.0, 256.0);
  const auto notch = dsp::design_fir(FilterKind::kBandstop, 49.0, 51.0, 256.0);
  std::vector<double> dc(2048, 3.0);
  const auto y = dsp::filtfilt(band.taps, dc);
  CHECK(rms(y, 256, 1792) <= 0.01 * 3.0);
  const auto mains = tone(50.0, 256.0, 2048);
  const auto z = dsp::filtfilt(notch.taps, mains);
  CHECK(rms(z, 256, 1792) <= 0.01 * rms(mains, 256, 1792));
}

TEST_CASE("filtfilt handles signals shorter than the filter") {
  const auto band = dsp::design_fir(FilterKind::kBandpass, 0.5, 50.0, 256.0);
  std::vector<double> x{1.0, -1.0, 2.0};
  CHECK(dsp::filtfilt(band.taps, x).size() == 3);
  CHECK_THROWS_AS(dsp::filtfilt(band.taps, std::vector<double>{}), InputError);
}

ContinuousRecording ramp_recording(std::size_t channels, std::size_t samples, double fs) {
  ContinuousRecording rec;
  rec.fs = fs;
  rec.channels = channels;
  rec.data.resize(channels * samples);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t i = 0; i < samples; ++i) rec.data[c * samples + i] = 1000.0 * c + i;
  }
  return rec;
}

TEST_CASE("downsample keeps every factor-th sample and rescales onsets") {
  auto rec = ramp_recording(2, 11, 256.0);
  rec.events = {{5, 1}};
  const auto out = dsp::downsample(rec, 2);
  CHECK(out.fs == 128.0);
  REQUIRE(out.samples() == 6);
  CHECK(out.channel(1)[3] == 1006.0);
  CHECK(out.events[0].onset_sample == 2);
  CHECK_THROWS_AS(dsp::downsample(rec, 0), InputError);
}

TEST_CASE("epoching cuts consecutive labeled windows from each segment") {
  auto rec = ramp_recording(3, 4000, 128.0);
  rec.events = {{10, 2}, {1500, 0}};
  const auto samples = dsp::epoch(rec, {}, 7);
  REQUIRE(samples.size() == 10);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    CHECK(s.channels == 3);
    CHECK(s.timepoints == 256);
    CHECK(s.subject == 7);
    CHECK(s.label == (k < 5 ? 2 : 0));
    const std::size_t start = (k < 5 ? 10 : 1500) + (k % 5) * 256;
    CHECK(s.at(2, 0) == 2000.0 + start);
    CHECK(s.at(0, 255) == start + 255.0);
  }
}

TEST_CASE("epoching names the event that overruns the recording") {
  auto rec = ramp_recording(1, 1500, 128.0);
  rec.events = {{0, 1}, {300, 1}};
  try {
    dsp::epoch(rec);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("event 1") != std::string::npos);
  }
  CHECK_THROWS_AS(dsp::epoch(rec, {3.0, 2.0}), InputError);
}

TEST_CASE("zscore normalizes each channel") {
  Rng rng(4);
  EegSample s;
  s.channels = 2;
  s.timepoints = 100;
  s.data.resize(200);
  for (double& v : s.data) v = rng.normal(5.0, 3.0);
  dsp::zscore(s);
  for (std::size_t c = 0; c < 2; ++c) {
    double m = 0.0, v = 0.0;
    for (std::size_t t = 0; t < 100; ++t) m += s.at(c, t);
    m /= 100;
    for (std::size_t t = 0; t < 100; ++t) v += (s.at(c, t) - m) * (s.at(c, t) - m);
    CHECK(std::abs(m) < 1e-12);
    CHECK(v / 100 == doctest::Approx(1.0));
  }
}

TEST_CASE("preprocess turns a 256 Hz recording into 21 x 256 epochs") {
  Rng rng(2);
  ContinuousRecording rec;
  rec.fs = 256.0;
  rec.channels = kChannels;
  const std::size_t n = 256 * 24;
  rec.data.resize(kChannels * n);
  for (double& v : rec.data) v = rng.normal();
  rec.events = {{256, 3}, {256 * 12, 1}};
  const auto samples = dsp::preprocess(rec);
  REQUIRE(samples.size() == 10);
  for (const auto& s : samples) {
    CHECK(s.channels == kChannels);
    CHECK(s.timepoints == kTimepoints);
    CHECK(s.data.size() == kChannels * kTimepoints);
  }
  CHECK(samples[0].label == 3);
  CHECK(samples[9].label == 1);
}

}  // namespace
}  // namespace tastenet
