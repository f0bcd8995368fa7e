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

#include <cstring>
#include <filesystem>
#include <limits>

#include "tastenet/eegb.hpp"
#include "tastenet/errors.hpp"
#include "tastenet/rng.hpp"

namespace tastenet {
namespace {

eegb::Dataset small_dataset(Rng& rng, std::size_t n, std::size_t channels = 3,
                            std::size_t timepoints = 5) {
  eegb::Dataset d;
  d.fs = 128.0;
  d.channels = channels;
  d.timepoints = timepoints;
  for (std::size_t i = 0; i < n; ++i) {
    DualLabelSample s;
    s.channels = channels;
    s.timepoints = timepoints;
    s.labelx = static_cast<int>(rng.index(4));
    if (i % 2 == 0) {
      s.labely = s.labelx;
      s.r = 0.0;
    } else {
      s.labely = static_cast<int>(rng.index(4));
      s.r = 0.25;  // exactly representable in f32
    }
    for (std::size_t k = 0; k < channels * timepoints; ++k) {
      s.data.push_back(static_cast<float>(rng.normal()));
    }
    d.samples.push_back(std::move(s));
  }
  return d;
}

template <typename T>
void append(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

TEST_CASE("encoding matches the documented byte layout") {
  eegb::Dataset d;
  d.fs = 128.0;
  d.channels = 2;
  d.timepoints = 2;
  DualLabelSample s;
  s.channels = 2;
  s.timepoints = 2;
  s.labelx = 1;
  s.labely = 3;
  s.r = 0.5;
  s.data = {1.0, 2.0, -3.0, 0.5};
  d.samples = {s};
  std::vector<std::uint8_t> expect{'E', 'E', 'G', 'B'};
  append<std::uint32_t>(expect, 1);
  append<std::uint32_t>(expect, 1);
  append<std::uint16_t>(expect, 2);
  append<std::uint16_t>(expect, 2);
  append<float>(expect, 128.0f);
  expect.push_back(1);
  expect.push_back(3);
  append<float>(expect, 0.5f);
  for (float v : {1.0f, 2.0f, -3.0f, 0.5f}) append<float>(expect, v);
  CHECK(eegb::encode(d) == expect);
  CHECK(expect.size() == eegb::kHeaderSize + 6 + 16);
}

TEST_CASE("datasets round-trip through bytes and files") {
  Rng rng(1);
  const auto d = small_dataset(rng, 7);
  const auto back = eegb::decode(eegb::encode(d));
  CHECK(back.fs == d.fs);
  CHECK(back.channels == 3);
  CHECK(back.timepoints == 5);
  REQUIRE(back.samples.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(back.samples[i].labelx == d.samples[i].labelx);
    CHECK(back.samples[i].labely == d.samples[i].labely);
    CHECK(back.samples[i].r == d.samples[i].r);
    CHECK(back.samples[i].data == d.samples[i].data);
  }
  const auto path = (std::filesystem::temp_directory_path() / "tastenet_test.eegb").string();
  eegb::write(path, d);
  CHECK(eegb::encode(eegb::read(path)) == eegb::encode(d));
  std::filesystem::remove(path);
  CHECK_THROWS(eegb::read(path));
}

TEST_CASE("an empty dataset is valid") {
  eegb::Dataset d;
  const auto bytes = eegb::encode(d);
  CHECK(bytes.size() == eegb::kHeaderSize);
  CHECK(eegb::decode(bytes).samples.empty());
}

std::uint64_t offset_of(const std::vector<std::uint8_t>& bytes) {
  try {
    eegb::decode(bytes);
  } catch (const FormatError& e) {
    return e.offset();
  }
  FAIL("decode accepted malformed bytes");
  return 0;
}

TEST_CASE("malformed files fail with the offending byte offset") {
  Rng rng(2);
  const auto good = eegb::encode(small_dataset(rng, 3));
  const std::size_t record = 6 + 4 * 15;

  auto bad = good;
  bad[1] = 'X';
  CHECK(offset_of(bad) == 0);

  bad = good;
  bad[4] = 2;
  CHECK(offset_of(bad) == 4);

  bad = good;
  bad[12] = 0;
  bad[13] = 0;
  CHECK(offset_of(bad) == 12);

  bad = good;
  const float nan = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(bad.data() + 16, &nan, 4);
  CHECK(offset_of(bad) == 16);

  bad = good;
  bad.pop_back();
  CHECK(offset_of(bad) == bad.size());

  bad = good;
  bad.push_back(0);
  CHECK(offset_of(bad) == good.size());

  // Second sample: r above one.
  bad = good;
  const float big = 1.5f;
  std::memcpy(bad.data() + eegb::kHeaderSize + record + 2, &big, 4);
  CHECK(offset_of(bad) == eegb::kHeaderSize + record + 2);

  // First sample is single-labeled; give it a different labely.
  bad = good;
  bad[eegb::kHeaderSize + 1] = static_cast<std::uint8_t>((bad[eegb::kHeaderSize] + 1) % 4);
  CHECK(offset_of(bad) == eegb::kHeaderSize);

  bad = good;
  bad[eegb::kHeaderSize + record] = 9;
  CHECK(offset_of(bad) == eegb::kHeaderSize + record);

  bad = good;
  const float inf = std::numeric_limits<float>::infinity();
  std::memcpy(bad.data() + eegb::kHeaderSize + 6 + 8, &inf, 4);
  CHECK(offset_of(bad) == eegb::kHeaderSize + 6 + 8);
}

TEST_CASE("fuzzed inputs either decode or raise a format error") {
  Rng rng(3);
  const auto good = eegb::encode(small_dataset(rng, 4));
  int rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto bytes = good;
    const int mode = static_cast<int>(rng.index(3));
    if (mode == 0) {
      const std::size_t flips = 1 + rng.index(4);
      for (std::size_t k = 0; k < flips; ++k) {
        bytes[rng.index(bytes.size())] ^= static_cast<std::uint8_t>(1u << rng.index(8));
      }
    } else if (mode == 1) {
      bytes.resize(rng.index(bytes.size()));
    } else {
      bytes.resize(rng.index(64));
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.index(256));
    }
    try {
      const auto d = eegb::decode(bytes);
      CHECK(d.samples.size() * (6 + 4 * d.channels * d.timepoints) + eegb::kHeaderSize ==
            bytes.size());
    } catch (const FormatError& e) {
      CHECK(e.offset() <= bytes.size());
      ++rejected;
    }
  }
  CHECK(rejected > 1000);
}

TEST_CASE("encode refuses samples the format cannot represent") {
  Rng rng(4);
  auto d = small_dataset(rng, 2);
  d.samples[0].labely = (d.samples[0].labelx + 1) % 4;  // r is 0
  CHECK_THROWS_AS(eegb::encode(d), InputError);
  d = small_dataset(rng, 2);
  d.samples[1].data.pop_back();
  CHECK_THROWS_AS(eegb::encode(d), InputError);
}

TEST_CASE("single-labeled samples convert to and from the dual form") {
  std::vector<EegSample> raw(2);
  raw[0].label = 2;
  raw[0].data.assign(kChannels * kTimepoints, 0.5);
  raw[1].label = 1;
  raw[1].data.assign(kChannels * kTimepoints, -0.5);
  const auto d = eegb::from_samples(raw, 128.0);
  CHECK(d.samples[0].labelx == 2);
  CHECK(d.samples[0].labely == 2);
  CHECK(d.samples[0].r == 0.0);
  const auto back = to_single_label(eegb::decode(eegb::encode(d)).samples);
  CHECK(back[1].label == 1);
  CHECK(back[1].data == raw[1].data);
  auto dual = d.samples;
  dual[0].labely = 3;
  dual[0].r = 0.5;
  CHECK_THROWS_AS(to_single_label(dual), InputError);
}

}  // namespace
}  // namespace tastenet
