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

// CSV ingestion and serialization.
//
// Input follows RFC 4180: a mandatory header row, comma separators, fields
// optionally wrapped in double quotes (with "" as an escaped quote), LF or
// CRLF line endings. Values are parsed without regard to locale. Any error
// aborts the whole load; partial tables are never returned.

#ifndef DPKIT_CSV_H_
#define DPKIT_CSV_H_

#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"
#include "dpkit/table.h"

namespace dpkit {

// Errors:
//   NotFound          "MissingFile: ..."
//   InvalidArgument   "HeaderMismatch: ..."
//   InvalidArgument   "TypeParseError: <source> line <n>, column '<name>': ..."
absl::StatusOr<Table> LoadCsv(const std::string& path, const Schema& schema);

// Same as LoadCsv on in-memory text. `source` names the input in errors.
absl::StatusOr<Table> ParseCsv(absl::string_view text, const Schema& schema,
                               absl::string_view source = "<memory>");

// Reads only the header record and checks it against `schema`.
absl::Status CheckCsvHeader(const std::string& path, const Schema& schema);

// Serializes with a header row and LF line endings. Fields containing a
// comma, quote or line break are quoted.
std::string WriteCsv(const Table& table);

// Splits CSV text into records of raw fields. Exposed for tests.
absl::StatusOr<std::vector<std::vector<std::string>>> SplitCsvRecords(
    absl::string_view text);

}  // namespace dpkit

#endif  // DPKIT_CSV_H_
