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

#include "dpkit/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpkit/cli/query_json.h"
#include "dpkit/compiler.h"
#include "dpkit/csv.h"
#include "dpkit/schema_file.h"
#include "dpkit/session.h"
#include "json.hpp"

namespace dpkit::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

std::string TablePath(const std::string& data_dir, const std::string& name) {
  return (fs::path(data_dir) / (name + ".csv")).string();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("MissingFile: cannot open '", path, "'"));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Everything a command knows before it touches private rows.
struct Plan {
  std::vector<TableSpec> tables;
  std::vector<ScriptQuery> queries;
  Catalog catalog;
};

// Loads the schema and script, checks that every table file exists, and
// builds the catalog. Public tables are loaded only when `load_public`;
// otherwise they are empty tables with the declared schema.
absl::StatusOr<Plan> Prepare(const RunConfig& config, bool load_public) {
  Plan plan;
  absl::StatusOr<std::vector<TableSpec>> tables =
      LoadSchemaFile(config.schema_path);
  if (!tables.ok()) return tables.status();
  plan.tables = *std::move(tables);
  absl::StatusOr<std::string> script = ReadFile(config.script_path);
  if (!script.ok()) return script.status();
  absl::StatusOr<std::vector<ScriptQuery>> queries = ParseQueryScript(*script);
  if (!queries.ok()) return queries.status();
  plan.queries = *std::move(queries);
  if (!fs::is_directory(config.data_dir)) {
    return absl::NotFoundError(absl::StrCat(
        "MissingFile: data directory '", config.data_dir, "' does not exist"));
  }

  plan.catalog.unit = config.unit;
  plan.catalog.measure = config.budget.measure;
  for (const TableSpec& spec : plan.tables) {
    std::string path = TablePath(config.data_dir, spec.name);
    if (!fs::is_regular_file(path)) {
      return absl::NotFoundError(absl::StrCat(
          "MissingFile: table '", spec.name, "' expects '", path, "'"));
    }
    if (spec.is_public) {
      absl::StatusOr<Table> table =
          load_public ? LoadCsv(path, spec.schema)
                      : Table::Create(spec.schema, {});
      if (!table.ok()) return table.status();
      plan.catalog.public_tables.emplace(spec.name, *std::move(table));
      continue;
    }
    std::optional<std::string> id;
    if (config.unit.is_id()) {
      if (spec.id_column && *spec.id_column != config.unit.id_column()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "UnitMismatch: table '", spec.name, "' declares ID column '",
            *spec.id_column, "' but the unit protects '",
            config.unit.id_column(), "'"));
      }
      if (!spec.schema.IndexOf(config.unit.id_column())) {
        return absl::InvalidArgumentError(
            absl::StrCat("MissingIdColumn: table '", spec.name,
                         "' has no column '", config.unit.id_column(), "'"));
      }
      id = config.unit.id_column();
    }
    absl::StatusOr<TableDomain> domain = TableDomain::Create(spec.schema, id);
    if (!domain.ok()) return domain.status();
    plan.catalog.private_tables.emplace(spec.name, *std::move(domain));
  }
  if (plan.catalog.private_tables.empty()) {
    return absl::InvalidArgumentError(
        "EmptyTables: the schema declares no private table");
  }
  return plan;
}

absl::Status CompileAll(const Plan& plan) {
  for (const ScriptQuery& q : plan.queries) {
    absl::StatusOr<CompiledQuery> compiled =
        Compile(q.query, plan.catalog, q.spend);
    if (!compiled.ok()) {
      return absl::Status(compiled.status().code(),
                          absl::StrCat("query '", q.name, "': ",
                                       compiled.status().message()));
    }
  }
  return absl::OkStatus();
}

Json ValueToJson(const Value& value) {
  if (const int64_t* i = std::get_if<int64_t>(&value)) return *i;
  if (const double* d = std::get_if<double>(&value)) return *d;
  return std::get<std::string>(value);
}

Json TableRowsJson(const Table& table) {
  Json rows = Json::array();
  for (const Row& row : table.rows()) {
    Json object = Json::object();
    for (size_t c = 0; c < row.size(); ++c) {
      object[table.schema().column(c).name] = ValueToJson(row[c]);
    }
    rows.push_back(std::move(object));
  }
  return rows;
}

absl::Status WriteResult(const RunConfig& config, const std::string& name,
                         const Table& table, const ExtRational& remaining,
                         std::ostream& out) {
  std::string text;
  if (config.json) {
    Json line = {{"query", name},
                 {"rows", TableRowsJson(table)},
                 {"remaining_budget", remaining.ToString()}};
    text = line.dump() + "\n";
  } else {
    text = WriteCsv(table);
  }
  if (config.out_dir.empty()) {
    if (!config.json) out << "# query: " << name << "\n";
    out << text;
    return absl::OkStatus();
  }
  fs::path path =
      fs::path(config.out_dir) / (name + (config.json ? ".json" : ".csv"));
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    return absl::InvalidArgumentError(
        absl::StrCat("OutputError: cannot write '", path.string(), "'"));
  }
  return absl::OkStatus();
}

void PrintRemaining(const RunConfig& config, const ExtRational& remaining,
                    std::ostream& out) {
  if (config.json) {
    out << Json{{"remaining_budget", remaining.ToString()}}.dump() << "\n";
  } else {
    out << "remaining_budget: " << remaining.ToString() << "\n";
  }
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kResourceExhausted:
      return kExitBudget;
    case absl::StatusCode::kFailedPrecondition:
      return kExitCompile;
    default:
      return kExitUsage;
  }
}

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Plan> plan = Prepare(config, /*load_public=*/true);
  if (!plan.ok()) return Fail(plan.status(), err);
  if (absl::Status s = CompileAll(*plan); !s.ok()) return Fail(s, err);
  if (!config.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
      return Fail(absl::InvalidArgumentError(absl::StrCat(
                      "OutputError: cannot create '", config.out_dir, "'")),
                  err);
    }
  }

  Session::Builder builder;
  builder.WithPrivacyBudget(config.budget)
      .WithPrivacyUnit(config.unit)
      .WithSeed(config.seed);
  for (const auto& [name, table] : plan->catalog.public_tables) {
    builder.WithPublicTable(name, table);
  }
  for (const TableSpec& spec : plan->tables) {
    if (spec.is_public) continue;
    absl::StatusOr<Table> table =
        LoadCsv(TablePath(config.data_dir, spec.name), spec.schema);
    if (!table.ok()) return Fail(table.status(), err);
    builder.WithPrivateTable(spec.name, *std::move(table));
  }
  absl::StatusOr<Session> session = builder.Build();
  if (!session.ok()) return Fail(session.status(), err);

  int code = kExitOk;
  for (const ScriptQuery& q : plan->queries) {
    absl::StatusOr<Table> result = session->Evaluate(q.query, q.spend);
    if (!result.ok()) {
      code = Fail(absl::Status(result.status().code(),
                               absl::StrCat("query '", q.name, "': ",
                                            result.status().message())),
                  err);
      break;
    }
    absl::Status written = WriteResult(
        config, q.name, *result, session->RemainingBudget().amount, out);
    if (!written.ok()) {
      code = Fail(written, err);
      break;
    }
  }
  PrintRemaining(config, session->RemainingBudget().amount, out);
  return code;
}

int CmdBudget(const RunConfig& config, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Plan> plan = Prepare(config, /*load_public=*/false);
  if (!plan.ok()) return Fail(plan.status(), err);
  for (const TableSpec& spec : plan->tables) {
    absl::Status header =
        CheckCsvHeader(TablePath(config.data_dir, spec.name), spec.schema);
    if (!header.ok()) return Fail(header, err);
  }
  if (absl::Status s = CompileAll(*plan); !s.ok()) return Fail(s, err);

  ExtRational total_spend;
  for (const ScriptQuery& q : plan->queries) total_spend += q.spend;
  std::optional<ExtRational> remaining =
      CheckedSubtract(config.budget.amount, total_spend);
  if (!remaining) {
    std::optional<ExtRational> deficit =
        CheckedSubtract(total_spend, config.budget.amount);
    out << "deficit: "
        << (deficit ? deficit->ToString() : ExtRational::Infinity().ToString())
        << "\n";
    err << "error: InsufficientBudget: the script spends "
        << total_spend.ToString() << " of " << config.budget.amount.ToString()
        << "\n";
    return kExitBudget;
  }
  PrintRemaining(config, *remaining, out);
  return kExitOk;
}

int CmdValidate(const std::string& schema_path, const std::string& data_dir,
                std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::vector<TableSpec>> tables = LoadSchemaFile(schema_path);
  if (!tables.ok()) return Fail(tables.status(), err);
  int code = kExitOk;
  for (const TableSpec& spec : *tables) {
    std::string path = TablePath(data_dir, spec.name);
    absl::StatusOr<Table> table = LoadCsv(path, spec.schema);
    if (!table.ok()) {
      err << "error: " << spec.name << ": " << table.status().message()
          << "\n";
      code = kExitUsage;
      continue;
    }
    out << "ok: " << spec.name << " (" << table->size() << " rows)\n";
  }
  return code;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Differentially private queries over CSV tables", "dpkit");
  app.require_subcommand(1);

  RunConfig config;
  std::string unit = "add-max-rows:1";
  std::string measure = "pure";
  std::string budget;
  std::string format = "csv";

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--schema", config.schema_path, "Schema JSON file")
        ->required();
    cmd->add_option("--data", config.data_dir, "Directory of <table>.csv")
        ->required();
    cmd->add_option("--script", config.script_path, "Query script JSON")
        ->required();
    cmd->add_option("--unit", unit,
                    "add-max-rows:<k> or add-remove-id:<column>");
    cmd->add_option("--measure", measure, "pure or zcdp")
        ->check(CLI::IsMember({"pure", "zcdp"}));
    cmd->add_option("--budget", budget, "Exact decimal or a/b")->required();
    cmd->add_option("--seed", config.seed, "64-bit seed")->required();
    cmd->add_option("--out", config.out_dir, "Output directory");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  CLI::App* run = app.add_subcommand("run", "Evaluate a query script");
  add_run_flags(run);
  CLI::App* budget_cmd =
      app.add_subcommand("budget", "Report the budget a script would leave");
  add_run_flags(budget_cmd);
  CLI::App* validate =
      app.add_subcommand("validate", "Check CSV files against a schema");
  validate->add_option("--schema", config.schema_path, "Schema JSON file")
      ->required();
  validate->add_option("--data", config.data_dir, "Directory of <table>.csv")
      ->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (validate->parsed()) {
    return CmdValidate(config.schema_path, config.data_dir, out, err);
  }
  absl::StatusOr<PrivacyUnit> parsed_unit = PrivacyUnit::Parse(unit);
  if (!parsed_unit.ok()) return Fail(parsed_unit.status(), err);
  config.unit = *parsed_unit;
  absl::StatusOr<Measure> parsed_measure = ParseMeasure(measure);
  if (!parsed_measure.ok()) return Fail(parsed_measure.status(), err);
  absl::StatusOr<ExtRational> amount = ExtRational::Parse(budget);
  if (!amount.ok()) {
    return Fail(absl::InvalidArgumentError(absl::StrCat(
                    "BadBudget: ", amount.status().message())),
                err);
  }
  config.budget = {*parsed_measure, *amount};
  config.json = format == "json";
  return run->parsed() ? CmdRun(config, out, err)
                       : CmdBudget(config, out, err);
}

}  // namespace dpkit::cli
