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

#include "tastenet/eegb.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "tastenet/binary_io.hpp"
#include "tastenet/errors.hpp"

namespace tastenet {

std::vector<std::uint8_t> binary::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void binary::write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing '" + path + "'");
}

namespace eegb {

std::vector<std::uint8_t> encode(const Dataset& dataset) {
  if (dataset.channels == 0 || dataset.channels > std::numeric_limits<std::uint16_t>::max() ||
      dataset.timepoints == 0 || dataset.timepoints > std::numeric_limits<std::uint16_t>::max()) {
    throw InputError("eegb: channel and timepoint counts must fit in 1..65535");
  }
  if (dataset.samples.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("eegb: too many samples");
  }
  const std::size_t cells = dataset.channels * dataset.timepoints;
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + dataset.samples.size() * (6 + 4 * cells));
  binary::put_bytes(out, "EEGB");
  binary::put<std::uint32_t>(out, kVersion);
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(dataset.samples.size()));
  binary::put<std::uint16_t>(out, static_cast<std::uint16_t>(dataset.channels));
  binary::put<std::uint16_t>(out, static_cast<std::uint16_t>(dataset.timepoints));
  binary::put<float>(out, static_cast<float>(dataset.fs));
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    const DualLabelSample& s = dataset.samples[i];
    if (s.channels != dataset.channels || s.timepoints != dataset.timepoints ||
        s.data.size() != cells) {
      throw InputError("eegb: sample " + std::to_string(i) + " does not match the header shape");
    }
    if (s.labelx < 0 || s.labelx > 255 || s.labely < 0 || s.labely > 255) {
      throw InputError("eegb: sample " + std::to_string(i) + " label does not fit in a byte");
    }
    if (!(s.r >= 0.0 && s.r <= 1.0) || (s.r == 0.0 && s.labelx != s.labely)) {
      throw InputError("eegb: sample " + std::to_string(i) + " has inconsistent dual label");
    }
    binary::put<std::uint8_t>(out, static_cast<std::uint8_t>(s.labelx));
    binary::put<std::uint8_t>(out, static_cast<std::uint8_t>(s.labely));
    binary::put<float>(out, static_cast<float>(s.r));
    for (double v : s.data) binary::put<float>(out, static_cast<float>(v));
  }
  return out;
}

Dataset decode(const std::vector<std::uint8_t>& bytes) {
  binary::Reader in(bytes);
  if (in.get_bytes(4, "magic") != "EEGB") throw FormatError(0, "bad magic, expected 'EEGB'");
  const std::uint32_t version = in.get<std::uint32_t>("version");
  if (version != kVersion) {
    throw FormatError(4, "unsupported version " + std::to_string(version));
  }
  const std::uint32_t n_samples = in.get<std::uint32_t>("n_samples");
  const std::uint16_t channels = in.get<std::uint16_t>("n_channels");
  const std::uint16_t timepoints = in.get<std::uint16_t>("n_timepoints");
  const float fs = in.get<float>("fs");
  if (channels == 0) throw FormatError(12, "n_channels must be positive");
  if (timepoints == 0) throw FormatError(14, "n_timepoints must be positive");
  if (!(std::isfinite(fs) && fs > 0.0f)) throw FormatError(16, "fs must be positive and finite");

  const std::uint64_t cells = static_cast<std::uint64_t>(channels) * timepoints;
  const std::uint64_t record = 6 + 4 * cells;
  const std::uint64_t expected = kHeaderSize + record * n_samples;
  if (bytes.size() != expected) {
    // Offset of the first byte the header arithmetic disagrees with.
    const std::uint64_t at = std::min<std::uint64_t>(bytes.size(), expected);
    throw FormatError(at, "header promises " + std::to_string(n_samples) + " samples (" +
                              std::to_string(expected) + " bytes), file has " +
                              std::to_string(bytes.size()) + " bytes");
  }

  Dataset out;
  out.fs = fs;
  out.channels = channels;
  out.timepoints = timepoints;
  out.samples.reserve(n_samples);
  for (std::uint32_t i = 0; i < n_samples; ++i) {
    const std::size_t at = in.offset();
    DualLabelSample s;
    s.channels = channels;
    s.timepoints = timepoints;
    s.labelx = in.get<std::uint8_t>("labelx");
    s.labely = in.get<std::uint8_t>("labely");
    if (s.labelx >= kNumClasses) throw FormatError(at, "labelx is not a class index");
    if (s.labely >= kNumClasses) throw FormatError(at + 1, "labely is not a class index");
    const float r = in.get<float>("r");
    if (!(r >= 0.0f && r <= 1.0f)) throw FormatError(at + 2, "r outside [0, 1]");
    if (r == 0.0f && s.labelx != s.labely) {
      throw FormatError(at, "single-labeled sample (r = 0) with labely != labelx");
    }
    s.r = r;
    s.data.resize(cells);
    for (double& v : s.data) {
      const std::size_t value_at = in.offset();
      v = in.get<float>("sample values");
      if (!std::isfinite(v)) throw FormatError(value_at, "non-finite sample value");
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

void write(const std::string& path, const Dataset& dataset) {
  binary::write_file(path, encode(dataset));
}

Dataset read(const std::string& path) { return decode(binary::read_file(path)); }

Dataset from_samples(const std::vector<EegSample>& samples, double fs) {
  return from_samples(to_dual_label(samples), fs);
}

Dataset from_samples(const std::vector<DualLabelSample>& samples, double fs) {
  Dataset d;
  d.fs = fs;
  if (!samples.empty()) {
    d.channels = samples[0].channels;
    d.timepoints = samples[0].timepoints;
  }
  d.samples = samples;
  return d;
}

}  // namespace eegb
}  // namespace tastenet
