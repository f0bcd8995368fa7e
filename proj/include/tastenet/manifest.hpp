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

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tastenet::manifest {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

struct FileRef {
  std::string path;
  std::string sha256;
};

// What a command consumed and produced, with the fully resolved config and
// options needed to run it again.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::map<std::string, std::string> options;  // resolved CLI options
  std::map<std::string, FileRef> inputs;
  std::map<std::string, FileRef> outputs;
  nlohmann::json seeds = nlohmann::json::object();

  void add_input(const std::string& role, const std::string& path);
  void add_output(const std::string& role, const std::string& path);

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& doc);
  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);
};

}  // namespace tastenet::manifest
