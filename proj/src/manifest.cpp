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

#include "tastenet/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <memory>

#include "tastenet/binary_io.hpp"
#include "tastenet/errors.hpp"

namespace tastenet::manifest {

std::string sha256_file(const std::string& path) {
  const std::vector<std::uint8_t> bytes = binary::read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("sha256 failed for '" + path + "'");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void RunManifest::add_input(const std::string& role, const std::string& path) {
  inputs[role] = FileRef{path, sha256_file(path)};
}

void RunManifest::add_output(const std::string& role, const std::string& path) {
  outputs[role] = FileRef{path, sha256_file(path)};
}

nlohmann::json RunManifest::to_json() const {
  auto refs = [](const std::map<std::string, FileRef>& files) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [role, ref] : files) j[role] = {{"path", ref.path}, {"sha256", ref.sha256}};
    return j;
  };
  return nlohmann::json{{"command", command}, {"config", config}, {"options", options},
                        {"seeds", seeds},     {"inputs", refs(inputs)},
                        {"outputs", refs(outputs)}};
}

RunManifest RunManifest::from_json(const nlohmann::json& doc) {
  RunManifest m;
  try {
    m.command = doc.at("command").get<std::string>();
    m.config = doc.at("config");
    m.options = doc.at("options").get<std::map<std::string, std::string>>();
    m.seeds = doc.value("seeds", nlohmann::json::object());
    for (const auto& [role, ref] : doc.at("inputs").items()) {
      m.inputs[role] = FileRef{ref.at("path").get<std::string>(), ref.at("sha256").get<std::string>()};
    }
    for (const auto& [role, ref] : doc.at("outputs").items()) {
      m.outputs[role] =
          FileRef{ref.at("path").get<std::string>(), ref.at("sha256").get<std::string>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest", e.what());
  }
  return m;
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest", e.what());
  }
  return from_json(doc);
}

}  // namespace tastenet::manifest
