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

#include "dpkit/schema_file.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace dpkit {
namespace {

using nlohmann::json;

absl::StatusOr<TableSpec> ParseTableObject(const json& object,
                                           std::string name) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError("table schema must be a JSON object");
  }
  for (const auto& [key, unused] : object.items()) {
    if (key != "columns" && key != "id_column" && key != "name" &&
        key != "public") {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown schema field '", key, "'"));
    }
  }
  if (object.contains("name")) {
    if (!object["name"].is_string()) {
      return absl::InvalidArgumentError("'name' must be a string");
    }
    name = object["name"].get<std::string>();
  }
  if (name.empty()) return absl::InvalidArgumentError("table name is empty");
  if (!object.contains("columns") || !object["columns"].is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("table '", name, "': 'columns' must be an array"));
  }
  std::vector<Column> columns;
  for (const json& column : object["columns"]) {
    if (!column.is_object() || !column.contains("name") ||
        !column.contains("type") || !column["name"].is_string() ||
        !column["type"].is_string()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "table '", name, "': each column needs string 'name' and 'type'"));
    }
    absl::StatusOr<ColumnType> type =
        ParseColumnType(column["type"].get<std::string>());
    if (!type.ok()) return type.status();
    columns.push_back({column["name"].get<std::string>(), *type});
  }
  absl::StatusOr<Schema> schema = Schema::Create(std::move(columns));
  if (!schema.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("table '", name, "': ", schema.status().message()));
  }
  TableSpec spec{name, *std::move(schema), std::nullopt, false};
  if (object.contains("id_column")) {
    if (!object["id_column"].is_string()) {
      return absl::InvalidArgumentError("'id_column' must be a string");
    }
    spec.id_column = object["id_column"].get<std::string>();
    absl::StatusOr<TableDomain> domain =
        TableDomain::Create(spec.schema, spec.id_column);
    if (!domain.ok()) return domain.status();
  }
  if (object.contains("public")) {
    if (!object["public"].is_boolean()) {
      return absl::InvalidArgumentError("'public' must be a boolean");
    }
    spec.is_public = object["public"].get<bool>();
  }
  return spec;
}

absl::StatusOr<std::vector<TableSpec>> ParseSpecs(
    absl::string_view json_text, absl::string_view default_name) {
  json document = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (document.is_discarded()) {
    return absl::InvalidArgumentError("schema file is not valid JSON");
  }
  std::vector<TableSpec> specs;
  if (document.is_object() && document.contains("tables")) {
    const json& tables = document["tables"];
    if (!tables.is_object() || tables.empty() || document.size() != 1) {
      return absl::InvalidArgumentError(
          "'tables' must be a nonempty object mapping names to schemas");
    }
    for (const auto& [name, object] : tables.items()) {
      absl::StatusOr<TableSpec> spec = ParseTableObject(object, name);
      if (!spec.ok()) return spec.status();
      specs.push_back(*std::move(spec));
    }
  } else {
    absl::StatusOr<TableSpec> spec =
        ParseTableObject(document, std::string(default_name));
    if (!spec.ok()) return spec.status();
    specs.push_back(*std::move(spec));
  }
  std::set<std::string> names;
  for (const TableSpec& spec : specs) {
    if (!names.insert(spec.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate table name '", spec.name, "'"));
    }
  }
  return specs;
}

}  // namespace

absl::StatusOr<std::vector<TableSpec>> ParseSchemaJson(
    absl::string_view json_text, absl::string_view default_name) {
  absl::StatusOr<std::vector<TableSpec>> specs =
      ParseSpecs(json_text, default_name);
  if (!specs.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("SchemaError: ", specs.status().message()));
  }
  return specs;
}

absl::StatusOr<std::vector<TableSpec>> LoadSchemaFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("MissingFile: cannot open schema '", path, "'"));
  }
  std::ostringstream contents;
  contents << in.rdbuf();
  return ParseSchemaJson(contents.str(),
                         std::filesystem::path(path).stem().string());
}

}  // namespace dpkit
