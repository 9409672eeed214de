//
// Copyright 2026 The dpkit Authors.
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
//

// The `dpkit` command-line tool.
//
//   dpkit run      --schema s.json --data dir --script q.json
//                  --unit add-max-rows:1 --measure pure --budget 1 --seed 7
//                  [--out dir] [--format csv|json]
//   dpkit budget   (same flags; reads CSV headers only)
//   dpkit validate --schema s.json --data dir
//
// Exit codes: 0 success, 2 configuration, parse, type or data errors, 3 a
// query does not fit in the remaining budget, 4 a query cannot be given a
// finite privacy cost (for example an unbounded-sensitivity pipeline).
// Results go to the output stream, diagnostics to the error stream.

#ifndef DPKIT_CLI_COMMANDS_H_
#define DPKIT_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "dpkit/query.h"
#include "dpkit/rational.h"

namespace dpkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitCompile = 4;

struct RunConfig {
  std::string schema_path;
  std::string data_dir;
  std::string script_path;
  PrivacyUnit unit = PrivacyUnit::AddMaxRows(1);
  PrivacyBudget budget;
  uint64_t seed = 0;
  // Directory receiving <query name>.csv or .json; empty means the output
  // stream.
  std::string out_dir;
  bool json = false;
};

// Maps an error's status code onto the exit codes above.
int ExitCodeFor(const absl::Status& status);

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdBudget(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdValidate(const std::string& schema_path, const std::string& data_dir,
                std::ostream& out, std::ostream& err);

// Parses `args` (args[0] is the program name) and dispatches.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace dpkit::cli

#endif  // DPKIT_CLI_COMMANDS_H_
