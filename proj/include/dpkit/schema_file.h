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

// Schema files.
//
// A single table is described by
//
//   {"columns": [{"name": "age", "type": "int64"}, ...],
//    "id_column": "user_id"}            // optional
//
// optionally with "name" (defaults to the schema file's stem) and
// "public": true for tables that are not privacy protected. Several tables
// are described by {"tables": {"<name>": <single-table object>, ...}}.
// Each table is read from <data_dir>/<name>.csv.

#ifndef DPKIT_SCHEMA_FILE_H_
#define DPKIT_SCHEMA_FILE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"
#include "dpkit/table.h"

namespace dpkit {

struct TableSpec {
  std::string name;
  Schema schema;
  std::optional<std::string> id_column;
  bool is_public = false;
};

absl::StatusOr<std::vector<TableSpec>> ParseSchemaJson(
    absl::string_view json_text, absl::string_view default_name);

absl::StatusOr<std::vector<TableSpec>> LoadSchemaFile(const std::string& path);

}  // namespace dpkit

#endif  // DPKIT_SCHEMA_FILE_H_
