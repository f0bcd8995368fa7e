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

#include <filesystem>
#include <fstream>

#include "tastenet/errors.hpp"
#include "tastenet/recording_io.hpp"

namespace tastenet {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "tastenet_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

TEST_CASE("recordings round-trip through CSV and the events sidecar") {
  TempDir dir;
  ContinuousRecording rec;
  rec.fs = 256.0;
  rec.channels = 3;
  rec.channel_names = {"Fz", "Cz", "Pz"};
  rec.data = {0.1, 0.2, 0.3, 0.4, -1.5, -2.5, -3.5, -4.5, 1e-7, 2e7, 3.25, 0.0};
  rec.events = {{0, 1}, {2, 3}};
  io::write_recording(rec, dir.file("r.csv"), dir.file("r.json"));
  const auto back = io::read_recording(dir.file("r.csv"), dir.file("r.json"), 256.0);
  CHECK(back.channels == 3);
  CHECK(back.samples() == 4);
  CHECK(back.channel_names == rec.channel_names);
  CHECK(back.data == rec.data);
  REQUIRE(back.events.size() == 2);
  CHECK(back.events[1].onset_sample == 2);
  CHECK(back.events[1].label == 3);
}

TEST_CASE("rows are timepoints and columns are channels") {
  TempDir dir;
  std::ofstream(dir.file("r.csv")) << "A,B\n1,10\n2,20\n3,30\n";
  std::ofstream(dir.file("r.json")) << R"([{"onset_sample": 1, "label": "bitter"}])";
  const auto rec = io::read_recording(dir.file("r.csv"), dir.file("r.json"), 128.0);
  CHECK(rec.fs == 128.0);
  CHECK(rec.channel(0)[2] == 3.0);
  CHECK(rec.channel(1)[0] == 10.0);
  CHECK(rec.events[0].label == 2);
}

TEST_CASE("malformed recordings are reported with their location") {
  TempDir dir;
  std::ofstream(dir.file("ok.json")) << "[]";
  std::ofstream(dir.file("short.csv")) << "A,B\n1,2\n3\n";
  CHECK_THROWS_WITH_AS(io::read_recording(dir.file("short.csv"), dir.file("ok.json"), 256),
                       doctest::Contains(":3:"), InputError);
  std::ofstream(dir.file("text.csv")) << "A\n1\nx\n";
  CHECK_THROWS_WITH_AS(io::read_recording(dir.file("text.csv"), dir.file("ok.json"), 256),
                       doctest::Contains("non-numeric"), InputError);
  std::ofstream(dir.file("good.csv")) << "A\n1\n";
  std::ofstream(dir.file("bad_label.json")) << R"([{"onset_sample": 0, "label": "umami"}])";
  CHECK_THROWS_AS(io::read_recording(dir.file("good.csv"), dir.file("bad_label.json"), 256),
                  InputError);
  std::ofstream(dir.file("neg.json")) << R"([{"onset_sample": -4, "label": 0}])";
  CHECK_THROWS_AS(io::read_recording(dir.file("good.csv"), dir.file("neg.json"), 256), InputError);
  std::ofstream(dir.file("obj.json")) << R"({"onset_sample": 0})";
  CHECK_THROWS_AS(io::read_recording(dir.file("good.csv"), dir.file("obj.json"), 256), InputError);
  CHECK_THROWS_AS(io::read_recording(dir.file("missing.csv"), dir.file("ok.json"), 256),
                  InputError);
}

TEST_CASE("taste names map to class indices") {
  CHECK(taste_label("sour") == 0);
  CHECK(taste_label("sweet") == 1);
  CHECK(taste_label("bitter") == 2);
  CHECK(taste_label("salty") == 3);
  CHECK(taste_name(3) == "salty");
  CHECK_THROWS_AS(taste_name(4), InputError);
}

}  // namespace
}  // namespace tastenet
