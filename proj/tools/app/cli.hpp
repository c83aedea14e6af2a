// Copyright 2026 The Algedon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace algedon::app {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitStrictRejection = 2;
inline constexpr int kExitQueryPrecondition = 3;
inline constexpr int kExitUsage = 64;

/// Entry point for the `algedon` tool. Machine output (JSON) goes to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

struct RunConfig {
  std::filesystem::path schema;
  std::filesystem::path hierarchy;
  std::optional<std::filesystem::path> events;  // replayed at startup; otherwise POST /events only
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string log_level = "info";
  std::optional<std::filesystem::path> report_path;
};

/// Parses and validates a serve config file (paths exist, port in [1, 65535]).
/// Relative paths resolve against the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace algedon::app
