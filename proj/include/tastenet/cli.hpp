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

#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

namespace tastenet::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kBadConfig = 2;
inline constexpr int kBadFile = 3;
inline constexpr int kShapeViolation = 4;

// Entry point of the `tastenet` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Executes `command` with an already-assembled config document and resolved
// options; this is also how a manifest is replayed.
int execute(const std::string& command, const nlohmann::json& config_doc,
            const std::map<std::string, std::string>& options, std::ostream& out,
            std::ostream& err);

}  // namespace tastenet::cli
