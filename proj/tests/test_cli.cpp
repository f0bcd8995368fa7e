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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tastenet/cli.hpp"
#include "tastenet/eegb.hpp"
#include "tastenet/manifest.hpp"

namespace tastenet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tastenet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Exit status of the installed binary, to check codes survive the process boundary.
int binary_status(const std::string& args) {
  const std::string cmd = std::string(TASTENET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

struct Workspace {
  fs::path dir;
  Workspace() : dir(fs::temp_directory_path() / "tastenet_cli_test") {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string at(const std::string& name) const { return (dir / name).string(); }
};

const std::vector<std::string> kSmall = {
    "--set", "synth.n_subjects=1", "--set", "model.width_mult=1/16", "--set", "train.epochs=2",
    "--set", "train.train_batch=16", "--set", "augment.multiple=1"};

std::vector<std::string> with_small(std::vector<std::string> args) {
  args.insert(args.end(), kSmall.begin(), kSmall.end());
  return args;
}

TEST_CASE("the synth to eval pipeline runs end to end") {
  Workspace ws;
  auto r = invoke(with_small({"synth", "--output", ws.at("all.eegb"), "--manifest",
                              ws.at("synth.json")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  CHECK(eegb::read(ws.at("all.eegb")).samples.size() == 80);

  r = invoke(with_small({"split", "--input", ws.at("all.eegb"), "--train-out", ws.at("tr.eegb"),
                         "--test-out", ws.at("te.eegb")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  CHECK(eegb::read(ws.at("tr.eegb")).samples.size() == 60);
  CHECK(eegb::read(ws.at("te.eegb")).samples.size() == 20);

  r = invoke(with_small({"augment", "--input", ws.at("tr.eegb"), "--output", ws.at("aug.eegb")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  CHECK(eegb::read(ws.at("aug.eegb")).samples.size() == 120);

  r = invoke(with_small({"train", "--train", ws.at("aug.eegb"), "--test", ws.at("te.eegb"),
                         "--out-dir", ws.at("run")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  for (const char* f : {"model.tsnn", "history.csv", "summary.json", "manifest.json"}) {
    CHECK_MESSAGE(fs::exists(ws.dir / "run" / f), f);
  }
  std::ifstream history(ws.dir / "run" / "history.csv");
  std::string header;
  std::getline(history, header);
  CHECK(header == "condition,run,epoch,train_loss,acc,f1,kappa");
  int rows = 0;
  for (std::string line; std::getline(history, line);) ++rows;
  CHECK(rows == 2);
  const json summary = read_json(ws.dir / "run" / "summary.json");
  CHECK(summary["epochs"] == 2);
  CHECK(summary["parameters"].get<long>() > 0);

  r = invoke(with_small({"eval", "--checkpoint", ws.at("run/model.tsnn"), "--test",
                         ws.at("te.eegb"), "--output", ws.at("metrics.json")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  const json metrics = read_json(ws.dir / "metrics.json");
  CHECK(metrics["n"] == 20);
  long total = 0;
  for (const auto& row : metrics["confusion"]) {
    for (const auto& v : row) total += v.get<long>();
  }
  CHECK(total == 20);
  CHECK(metrics["accuracy"].get<double>() >= 0.0);
  CHECK(metrics["accuracy"].get<double>() <= 1.0);

  // The last epoch's accuracy in the history matches a fresh evaluation.
  const json last = summary["final"];
  CHECK(last["accuracy"].get<double>() == doctest::Approx(metrics["accuracy"].get<double>()));
}

TEST_CASE("a manifest replays to identical outputs") {
  Workspace ws;
  auto r = invoke(with_small({"synth", "--output", ws.at("a.eegb"), "--manifest",
                              ws.at("m.json"), "--set", "synth.seed=17"}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  const auto m = manifest::RunManifest::read(ws.at("m.json"));
  CHECK(m.command == "synth");
  CHECK(m.seeds["synth"] == 17);
  REQUIRE(m.outputs.count("dataset") == 1);
  const std::string first = m.outputs.at("dataset").sha256;
  CHECK(first == manifest::sha256_file(ws.at("a.eegb")));

  fs::remove(ws.at("a.eegb"));
  r = invoke({"replay", ws.at("m.json")});
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  CHECK(manifest::sha256_file(ws.at("a.eegb")) == first);
}

TEST_CASE("synth can also emit continuous recordings that preprocess back to epochs") {
  Workspace ws;
  auto r = invoke(with_small({"synth", "--output", ws.at("s.eegb"), "--recordings",
                              ws.at("rec")}));
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  REQUIRE(fs::exists(ws.dir / "rec" / "subject0.csv"));
  r = invoke({"preprocess", "--csv", ws.at("rec/subject0.csv"), "--events",
              ws.at("rec/subject0.events.json"), "--output", ws.at("p.eegb"), "--subject", "0"});
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  const auto d = eegb::read(ws.at("p.eegb"));
  CHECK(d.samples.size() == 80);
  CHECK(d.channels == kChannels);
  CHECK(d.timepoints == kTimepoints);
}

TEST_CASE("failures map to distinct exit codes") {
  Workspace ws;
  // Bad config key.
  auto r = invoke({"synth", "--output", ws.at("x.eegb"), "--set", "synth.colour=3"});
  CHECK(r.code == cli::kBadConfig);
  CHECK(r.err.find("synth.colour") != std::string::npos);
  // Bad value.
  r = invoke({"synth", "--output", ws.at("x.eegb"), "--set", "synth.n_subjects=-1"});
  CHECK(r.code == cli::kBadConfig);
  // Missing config file.
  r = invoke({"synth", "--output", ws.at("x.eegb"), "-c", ws.at("missing.json")});
  CHECK(r.code == cli::kBadConfig);

  // Truncated EEGB.
  {
    std::ofstream bad(ws.at("bad.eegb"), std::ios::binary);
    bad << "EEGB";
  }
  r = invoke({"split", "--input", ws.at("bad.eegb"), "--train-out", ws.at("a.eegb"),
              "--test-out", ws.at("b.eegb")});
  CHECK(r.code == cli::kBadFile);
  CHECK(r.err.find("byte offset") != std::string::npos);

  // Well-formed file whose epochs do not fit the network.
  eegb::Dataset shortd;
  shortd.timepoints = 64;
  for (int i = 0; i < 8; ++i) {
    DualLabelSample s;
    s.channels = kChannels;
    s.timepoints = 64;
    s.data.assign(kChannels * 64, 0.01 * i);
    s.labelx = s.labely = i % kNumClasses;
    shortd.samples.push_back(s);
  }
  eegb::write(ws.at("short.eegb"), shortd);
  r = invoke(with_small({"train", "--train", ws.at("short.eegb"), "--test", ws.at("short.eegb"),
                         "--out-dir", ws.at("run")}));
  CHECK(r.code == cli::kShapeViolation);

  // Unreadable recording is a generic failure.
  r = invoke({"preprocess", "--csv", ws.at("nope.csv"), "--events", ws.at("nope.json"),
              "--output", ws.at("p.eegb")});
  CHECK(r.code == cli::kFailure);

  // Usage errors are rejected before anything runs.
  r = invoke({"train"});
  CHECK(r.code != cli::kOk);
  r = invoke({"fly"});
  CHECK(r.code != cli::kOk);
}

TEST_CASE("the binary reports the same exit codes") {
  Workspace ws;
  CHECK(binary_status("--help") == 0);
  CHECK(binary_status("synth --output " + ws.at("x.eegb") + " --set synth.bogus=1") ==
        cli::kBadConfig);
  {
    std::ofstream bad(ws.at("bad.eegb"), std::ios::binary);
    bad << "NOPE";
  }
  CHECK(binary_status("eval --checkpoint " + ws.at("bad.eegb") + " --test " +
                      ws.at("bad.eegb")) == cli::kBadFile);
  CHECK(binary_status("synth --output " + ws.at("x.eegb") + " --set synth.n_subjects=1") ==
        cli::kOk);
  CHECK(fs::exists(ws.dir / "x.eegb"));
}

}  // namespace
}  // namespace tastenet
