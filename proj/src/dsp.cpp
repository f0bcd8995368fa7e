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

#include "tastenet/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tastenet/errors.hpp"

namespace tastenet::dsp {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n == 1) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  }
  return w;
}

// Windowed-sinc lowpass with unit DC gain.
std::vector<double> lowpass(double cutoff_hz, double fs, const std::vector<double>& window) {
  const std::size_t n = window.size();
  const double center = static_cast<double>(n - 1) / 2.0;
  const double fc = 2.0 * cutoff_hz / fs;
  std::vector<double> h(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = fc * sinc(fc * (static_cast<double>(i) - center)) * window[i];
    total += h[i];
  }
  for (double& v : h) v /= total;
  return h;
}

// Mirror index without repeating the edge sample; valid for any length >= 1.
std::size_t reflect(std::ptrdiff_t i, std::size_t length) {
  if (length == 1) return 0;
  const std::ptrdiff_t period = 2 * static_cast<std::ptrdiff_t>(length - 1);
  i %= period;
  if (i < 0) i += period;
  return static_cast<std::size_t>(i < static_cast<std::ptrdiff_t>(length) ? i : period - i);
}

// Causal FIR with zero initial state.
std::vector<double> convolve_causal(std::span<const double> taps, const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const std::size_t kmax = std::min(taps.size(), n + 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) acc += taps[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

}  // namespace

FirFilter design_fir(FilterKind kind, double low_hz, double high_hz, double fs,
                     std::size_t n_taps) {
  if (n_taps == 0 || n_taps % 2 == 0) {
    throw InputError("design_fir: tap count must be odd, got " + std::to_string(n_taps));
  }
  if (!(fs > 0.0) || !(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < fs / 2.0)) {
    throw InputError("design_fir: band [" + std::to_string(low_hz) + ", " +
                     std::to_string(high_hz) + "] Hz invalid for fs " + std::to_string(fs) +
                     " Hz; need 0 < low < high < fs/2");
  }
  const std::vector<double> window = hamming(n_taps);
  const std::vector<double> upper = lowpass(high_hz, fs, window);
  const std::vector<double> lower = lowpass(low_hz, fs, window);
  FirFilter filter{kind, low_hz, high_hz, fs, std::vector<double>(n_taps)};
  for (std::size_t i = 0; i < n_taps; ++i) filter.taps[i] = upper[i] - lower[i];
  if (kind == FilterKind::kBandstop) {
    for (double& v : filter.taps) v = -v;
    filter.taps[n_taps / 2] += 1.0;
  }
  return filter;
}

double magnitude_response(const FirFilter& filter, double freq_hz) {
  std::complex<double> acc{0.0, 0.0};
  const double omega = 2.0 * std::numbers::pi * freq_hz / filter.fs;
  for (std::size_t n = 0; n < filter.taps.size(); ++n) {
    acc += filter.taps[n] * std::polar(1.0, -omega * static_cast<double>(n));
  }
  return std::abs(acc);
}

std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> signal) {
  if (signal.empty()) throw InputError("filtfilt: empty signal");
  const std::size_t pad = taps.size();
  const std::size_t length = signal.size();
  std::vector<double> padded(length + 2 * pad);
  for (std::size_t i = 0; i < padded.size(); ++i) {
    padded[i] = signal[reflect(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(pad),
                               length)];
  }
  std::vector<double> y = convolve_causal(taps, padded);
  std::reverse(y.begin(), y.end());
  y = convolve_causal(taps, y);
  std::reverse(y.begin(), y.end());
  return std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(pad),
                             y.begin() + static_cast<std::ptrdiff_t>(pad + length));
}

ContinuousRecording apply_filter(const ContinuousRecording& recording, const FirFilter& filter) {
  if (recording.channels == 0 || recording.samples() == 0) {
    throw InputError("apply_filter: empty recording");
  }
  ContinuousRecording out = recording;
  for (std::size_t c = 0; c < recording.channels; ++c) {
    std::vector<double> y = filtfilt(filter.taps, recording.channel(c));
    std::copy(y.begin(), y.end(), out.channel(c).begin());
  }
  return out;
}

ContinuousRecording downsample(const ContinuousRecording& recording, int factor) {
  if (factor < 1) throw InputError("downsample: factor must be a positive integer");
  const std::size_t step = static_cast<std::size_t>(factor);
  const std::size_t in_len = recording.samples();
  const std::size_t out_len = (in_len + step - 1) / step;
  ContinuousRecording out;
  out.fs = recording.fs / factor;
  out.channels = recording.channels;
  out.channel_names = recording.channel_names;
  out.data.resize(out.channels * out_len);
  for (std::size_t c = 0; c < recording.channels; ++c) {
    auto src = recording.channel(c);
    for (std::size_t i = 0; i < out_len; ++i) out.data[c * out_len + i] = src[i * step];
  }
  out.events = recording.events;
  for (RecordingEvent& e : out.events) e.onset_sample /= step;
  return out;
}

std::vector<EegSample> epoch(const ContinuousRecording& recording, const EpochOptions& options,
                             int subject) {
  const auto window = static_cast<std::size_t>(std::llround(options.window_s * recording.fs));
  const auto segment = static_cast<std::size_t>(std::llround(options.segment_s * recording.fs));
  if (window == 0 || segment < window) {
    throw InputError("epoch: a " + std::to_string(options.segment_s) +
                     " s segment holds no complete " + std::to_string(options.window_s) +
                     " s window");
  }
  const std::size_t per_segment = segment / window;
  const std::size_t total = recording.samples();
  std::vector<EegSample> samples;
  samples.reserve(recording.events.size() * per_segment);
  for (std::size_t e = 0; e < recording.events.size(); ++e) {
    const RecordingEvent& event = recording.events[e];
    if (event.onset_sample + segment > total) {
      throw InputError("epoch: event " + std::to_string(e) + " at sample " +
                       std::to_string(event.onset_sample) + " needs " + std::to_string(segment) +
                       " samples but the recording ends at " + std::to_string(total));
    }
    taste_name(event.label);  // validates the label
    for (std::size_t w = 0; w < per_segment; ++w) {
      EegSample s;
      s.channels = recording.channels;
      s.timepoints = window;
      s.label = event.label;
      s.subject = subject;
      s.segment = static_cast<int>(e);
      s.data.resize(s.channels * window);
      const std::size_t start = event.onset_sample + w * window;
      for (std::size_t c = 0; c < recording.channels; ++c) {
        auto src = recording.channel(c).subspan(start, window);
        std::copy(src.begin(), src.end(), s.data.begin() + static_cast<std::ptrdiff_t>(c * window));
      }
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

void zscore(EegSample& sample) {
  for (std::size_t c = 0; c < sample.channels; ++c) {
    auto row = std::span<double>(sample.data).subspan(c * sample.timepoints, sample.timepoints);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(row.size());
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(row.size()));
    for (double& v : row) v = sd > 0.0 ? (v - mean) / sd : 0.0;
  }
}

std::vector<EegSample> preprocess(const ContinuousRecording& recording,
                                  const PreprocessOptions& options, int subject) {
  const FirFilter bandpass = design_fir(FilterKind::kBandpass, options.bandpass_low_hz,
                                        options.bandpass_high_hz, recording.fs, options.n_taps);
  const FirFilter notch = design_fir(FilterKind::kBandstop, options.notch_low_hz,
                                     options.notch_high_hz, recording.fs, options.n_taps);
  ContinuousRecording filtered = apply_filter(apply_filter(recording, bandpass), notch);
  ContinuousRecording reduced = downsample(filtered, options.downsample_factor);
  std::vector<EegSample> samples = epoch(reduced, options.epoch, subject);
  if (options.zscore) {
    for (EegSample& s : samples) zscore(s);
  }
  return samples;
}

}  // namespace tastenet::dsp
