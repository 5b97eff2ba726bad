// Copyright 2026 The qbench Authors
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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbench/common/error.hpp"

namespace qbench {

using json = nlohmann::json;

/// Process exit codes of the command line.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitExecution = 4,
  kExitIo = 5,
  kExitNotFound = 6,
};

int exit_code(ErrorKind kind);

enum class OutputFormat { Table, Json, Csv };

/// Resolved settings. Precedence: flags, then QBENCH_* environment
/// variables, then the config file, then defaults. Paths are absolute.
struct CliConfig {
  std::filesystem::path dataset_root;
  std::filesystem::path device_dir;
  std::filesystem::path schema_dir;
  std::string provider = "local";
  std::string device;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::uint64_t> seed;
  bool spawn_worker = true;

  json to_json() const;
};

struct CliEnvironment {
  /// Environment lookup; the process environment when empty.
  std::function<std::optional<std::string>(const std::string&)> getenv;
  /// Executable started as the background worker; none means jobs wait for
  /// a "poll --wait" to run them.
  std::optional<std::filesystem::path> worker_exe;
  std::filesystem::path cwd;  // defaults to the current directory
};

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env = {});

}  // namespace qbench
