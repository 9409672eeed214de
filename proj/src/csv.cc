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

#include "dpkit/csv.h"

#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {
namespace {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("MissingFile: cannot open '", path, "'"));
  }
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::Status CheckHeader(const std::vector<std::string>& header,
                         const Schema& schema, absl::string_view source) {
  std::vector<std::string> expected;
  for (const Column& c : schema.columns()) expected.push_back(c.name);
  if (header != expected) {
    return absl::InvalidArgumentError(absl::StrCat(
        "HeaderMismatch: ", source, " has header [", absl::StrJoin(header, ","),
        "], expected [", absl::StrJoin(expected, ","), "]"));
  }
  return absl::OkStatus();
}

bool NeedsQuoting(absl::string_view field) {
  return field.find_first_of(",\"\r\n") != absl::string_view::npos;
}

}  // namespace

absl::StatusOr<std::vector<std::vector<std::string>>> SplitCsvRecords(
    absl::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  size_t i = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"') {
      if (!field.empty() || field_was_quoted) {
        return absl::InvalidArgumentError(absl::StrCat(
            "unexpected quote inside unquoted field in record ",
            records.size() + 1));
      }
      in_quotes = true;
      field_was_quoted = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      i += 2;
    } else if (c == '\n') {
      end_record();
      ++i;
    } else {
      if (field_was_quoted) {
        return absl::InvalidArgumentError(absl::StrCat(
            "garbage after closing quote in record ", records.size() + 1));
      }
      field.push_back(c);
      ++i;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError("unterminated quoted field");
  }
  // A final line without a trailing newline still forms a record.
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();
  return records;
}

absl::StatusOr<Table> ParseCsv(absl::string_view text, const Schema& schema,
                               absl::string_view source) {
  absl::StatusOr<std::vector<std::vector<std::string>>> records =
      SplitCsvRecords(text);
  if (!records.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("TypeParseError: ", source, ": ",
                     records.status().message()));
  }
  if (records->empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("HeaderMismatch: ", source, " has no header row"));
  }
  absl::Status header = CheckHeader(records->front(), schema, source);
  if (!header.ok()) return header;

  std::vector<Row> rows;
  rows.reserve(records->size() - 1);
  for (size_t r = 1; r < records->size(); ++r) {
    const std::vector<std::string>& fields = (*records)[r];
    size_t line = r + 1;
    if (fields.size() != schema.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "TypeParseError: ", source, " line ", line, ": expected ",
          schema.size(), " fields, found ", fields.size()));
    }
    Row row;
    row.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      absl::StatusOr<Value> value = ParseValue(fields[c], schema.column(c).type);
      if (!value.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "TypeParseError: ", source, " line ", line, ", column '",
            schema.column(c).name, "': ", value.status().message()));
      }
      row.push_back(*std::move(value));
    }
    rows.push_back(std::move(row));
  }
  return UncheckedTable(schema, std::move(rows));
}

absl::StatusOr<Table> LoadCsv(const std::string& path, const Schema& schema) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseCsv(*text, schema, path);
}

absl::Status CheckCsvHeader(const std::string& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("MissingFile: cannot open '", path, "'"));
  }
  // Header names never contain line breaks in files we accept, so the first
  // physical line is the header record.
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  absl::StatusOr<std::vector<std::vector<std::string>>> records =
      SplitCsvRecords(line);
  if (!records.ok() || records->empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("HeaderMismatch: ", path, " has no readable header row"));
  }
  return CheckHeader(records->front(), schema, path);
}

std::string WriteCsv(const Table& table) {
  std::string out;
  auto append_field = [&out](absl::string_view field) {
    if (!NeedsQuoting(field)) {
      out.append(field.data(), field.size());
      return;
    }
    out.push_back('"');
    for (char c : field) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  };
  const Schema& schema = table.schema();
  for (size_t c = 0; c < schema.size(); ++c) {
    if (c > 0) out.push_back(',');
    append_field(schema.column(c).name);
  }
  out.push_back('\n');
  for (const Row& row : table.rows()) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      append_field(ValueToString(row[c]));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace dpkit
