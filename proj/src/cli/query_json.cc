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

#include "dpkit/cli/query_json.h"

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace dpkit::cli {
namespace {

using Json = nlohmann::json;

absl::Status ScriptError(absl::string_view where, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("ScriptError: ", where, ": ", message));
}

absl::Status CheckMembers(const Json& j, absl::string_view where,
                          std::initializer_list<absl::string_view> allowed) {
  if (!j.is_object()) return ScriptError(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (absl::string_view a : allowed) known = known || a == key;
    if (!known) {
      return ScriptError(where, absl::StrCat("unknown member '", key, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<const Json*> Member(const Json& j, absl::string_view where,
                                   const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    return ScriptError(where, absl::StrCat("missing member '", key, "'"));
  }
  return &*it;
}

absl::StatusOr<std::string> StringMember(const Json& j, absl::string_view where,
                                         const char* key) {
  absl::StatusOr<const Json*> m = Member(j, where, key);
  if (!m.ok()) return m.status();
  if (!(*m)->is_string()) {
    return ScriptError(where, absl::StrCat("'", key, "' must be a string"));
  }
  return (*m)->get<std::string>();
}

absl::StatusOr<int64_t> IntMember(const Json& j, absl::string_view where,
                                  const char* key) {
  absl::StatusOr<const Json*> m = Member(j, where, key);
  if (!m.ok()) return m.status();
  if (!(*m)->is_number_integer()) {
    return ScriptError(where, absl::StrCat("'", key, "' must be an integer"));
  }
  return (*m)->get<int64_t>();
}

// Exact: the JSON text of a number, or a string such as "1/3".
absl::StatusOr<Rational> RationalOf(const Json& j, absl::string_view where) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    return ScriptError(where, "expected a number");
  }
  absl::StatusOr<Rational> r = ParseRational(text);
  if (!r.ok()) return ScriptError(where, r.status().message());
  return *r;
}

absl::StatusOr<Rational> RationalMember(const Json& j, absl::string_view where,
                                        const char* key) {
  absl::StatusOr<const Json*> m = Member(j, where, key);
  if (!m.ok()) return m.status();
  return RationalOf(**m, absl::StrCat(where, ".", key));
}

absl::StatusOr<std::vector<std::string>> StringList(const Json& j,
                                                    absl::string_view where,
                                                    const char* key) {
  absl::StatusOr<const Json*> m = Member(j, where, key);
  if (!m.ok()) return m.status();
  if (!(*m)->is_array()) {
    return ScriptError(where, absl::StrCat("'", key, "' must be a list"));
  }
  std::vector<std::string> out;
  for (const Json& item : **m) {
    if (!item.is_string()) {
      return ScriptError(where, absl::StrCat("'", key, "' must hold strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

absl::StatusOr<Value> KeyValue(const Json& j, absl::string_view where) {
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_number_integer()) return Value(j.get<int64_t>());
  if (j.is_number_float()) return Value(j.get<double>());
  return ScriptError(where, "key values must be strings or numbers");
}

absl::StatusOr<KeySet> ParseKeySet(const Json& j, absl::string_view where) {
  absl::Status status = CheckMembers(j, where, {"columns", "tuples"});
  if (!status.ok()) return status;
  absl::StatusOr<std::vector<std::string>> columns =
      StringList(j, where, "columns");
  if (!columns.ok()) return columns.status();
  absl::StatusOr<const Json*> tuples = Member(j, where, "tuples");
  if (!tuples.ok()) return tuples.status();
  if (!(*tuples)->is_array()) return ScriptError(where, "'tuples' must be a list");
  std::vector<Row> rows;
  for (const Json& t : **tuples) {
    Row row;
    if (t.is_array()) {
      for (const Json& v : t) {
        absl::StatusOr<Value> value = KeyValue(v, where);
        if (!value.ok()) return value.status();
        row.push_back(*std::move(value));
      }
    } else {
      absl::StatusOr<Value> value = KeyValue(t, where);
      if (!value.ok()) return value.status();
      row.push_back(*std::move(value));
    }
    rows.push_back(std::move(row));
  }
  absl::StatusOr<KeySet> keys =
      KeySet::FromTuples(*std::move(columns), std::move(rows));
  if (!keys.ok()) return ScriptError(where, keys.status().message());
  return keys;
}

absl::StatusOr<AggSpec> ParseAgg(const Json& j, absl::string_view where) {
  absl::Status status = CheckMembers(
      j, where, {"kind", "column", "low", "high", "granularity", "q", "bins"});
  if (!status.ok()) return status;
  absl::StatusOr<std::string> kind = StringMember(j, where, "kind");
  if (!kind.ok()) return kind.status();
  AggSpec spec;
  if (*kind == "Count") {
    spec.kind = AggSpec::Kind::kCount;
    return spec;
  }
  if (*kind == "Sum") {
    spec.kind = AggSpec::Kind::kSum;
  } else if (*kind == "Average") {
    spec.kind = AggSpec::Kind::kAverage;
  } else if (*kind == "Quantile") {
    spec.kind = AggSpec::Kind::kQuantile;
  } else {
    return ScriptError(where, absl::StrCat("unknown aggregation '", *kind, "'"));
  }
  absl::StatusOr<std::string> column = StringMember(j, where, "column");
  if (!column.ok()) return column.status();
  spec.column = *column;
  absl::StatusOr<Rational> low = RationalMember(j, where, "low");
  if (!low.ok()) return low.status();
  absl::StatusOr<Rational> high = RationalMember(j, where, "high");
  if (!high.ok()) return high.status();
  spec.low = *low;
  spec.high = *high;
  if (spec.kind == AggSpec::Kind::kQuantile) {
    absl::StatusOr<Rational> q = RationalMember(j, where, "q");
    if (!q.ok()) return q.status();
    absl::StatusOr<int64_t> bins = IntMember(j, where, "bins");
    if (!bins.ok()) return bins.status();
    spec.q = *q;
    spec.bins = *bins;
  } else if (j.contains("granularity")) {
    absl::StatusOr<Rational> g = RationalMember(j, where, "granularity");
    if (!g.ok()) return g.status();
    spec.granularity = *g;
  }
  return spec;
}

absl::StatusOr<Query> ParseNode(const Json& j, const std::string& where);

absl::StatusOr<Query> ParseInput(const Json& j, const std::string& where) {
  absl::StatusOr<const Json*> input = Member(j, where, "input");
  if (!input.ok()) return input.status();
  return ParseNode(**input, absl::StrCat(where, ".input"));
}

absl::StatusOr<FlatMapSpec> ParseFlatMap(const Json& j,
                                         const std::string& where) {
  FlatMapSpec spec;
  absl::StatusOr<std::string> column = StringMember(j, where, "column");
  if (!column.ok()) return column.status();
  spec.new_column = *column;
  absl::StatusOr<int64_t> k = IntMember(j, where, "max_rows");
  if (!k.ok()) return k.status();
  spec.max_rows = *k;
  bool has_split = j.contains("split"), has_values = j.contains("values");
  if (has_split == has_values) {
    return ScriptError(where, "FlatMap needs exactly one of 'split', 'values'");
  }
  if (has_split) {
    const Json& split = j["split"];
    std::string at = absl::StrCat(where, ".split");
    absl::Status status = CheckMembers(split, at, {"column", "delimiter"});
    if (!status.ok()) return status;
    absl::StatusOr<std::string> source = StringMember(split, at, "column");
    if (!source.ok()) return source.status();
    absl::StatusOr<std::string> delimiter = StringMember(split, at, "delimiter");
    if (!delimiter.ok()) return delimiter.status();
    spec.split_column = *source;
    spec.delimiter = *delimiter;
    return spec;
  }
  absl::StatusOr<std::vector<std::string>> values =
      StringList(j, where, "values");
  if (!values.ok()) return values.status();
  for (const std::string& text : *values) {
    absl::StatusOr<Expr> e = ParseExpr(text);
    spec.values.push_back(
        e.ok() ? *e : Expr::Invalid(std::string(e.status().message())));
  }
  return spec;
}

absl::StatusOr<Query> ParseNode(const Json& j, const std::string& where) {
  if (!j.is_object()) return ScriptError(where, "expected a node object");
  absl::StatusOr<std::string> kind = StringMember(j, where, "node");
  if (!kind.ok()) return kind.status();
  std::string at = absl::StrCat(where, "(", *kind, ")");

  if (*kind == "Source") {
    absl::Status status = CheckMembers(j, at, {"node", "table"});
    if (!status.ok()) return status;
    absl::StatusOr<std::string> table = StringMember(j, at, "table");
    if (!table.ok()) return table.status();
    return Query::Source(*table);
  }

  absl::Status status;
  if (*kind == "Filter") {
    status = CheckMembers(j, at, {"node", "input", "expr"});
  } else if (*kind == "Map") {
    status = CheckMembers(j, at, {"node", "input", "columns", "keep_existing"});
  } else if (*kind == "FlatMap") {
    status = CheckMembers(j, at,
                          {"node", "input", "column", "max_rows", "split",
                           "values"});
  } else if (*kind == "JoinPublic") {
    status = CheckMembers(j, at, {"node", "input", "table", "keys"});
  } else if (*kind == "JoinPrivate") {
    status = CheckMembers(j, at,
                          {"node", "input", "right", "keys", "left_bound",
                           "right_bound"});
  } else if (*kind == "TruncateById") {
    status = CheckMembers(j, at, {"node", "input", "bound"});
  } else if (*kind == "GroupBy") {
    status = CheckMembers(j, at, {"node", "input", "keyset"});
  } else if (*kind == "Agg") {
    status = CheckMembers(j, at, {"node", "input", "agg"});
  } else {
    return ScriptError(where, absl::StrCat("unknown node kind '", *kind, "'"));
  }
  if (!status.ok()) return status;
  absl::StatusOr<Query> input = ParseInput(j, at);
  if (!input.ok()) return input.status();

  if (*kind == "Filter") {
    absl::StatusOr<std::string> expr = StringMember(j, at, "expr");
    if (!expr.ok()) return expr.status();
    return input->Filter(absl::string_view(*expr));
  }
  if (*kind == "Map") {
    absl::StatusOr<const Json*> columns = Member(j, at, "columns");
    if (!columns.ok()) return columns.status();
    if (!(*columns)->is_array()) {
      return ScriptError(at, "'columns' must be a list");
    }
    std::vector<std::pair<std::string, std::string>> defs;
    for (const Json& c : **columns) {
      absl::Status s = CheckMembers(c, at, {"name", "expr"});
      if (!s.ok()) return s;
      absl::StatusOr<std::string> name = StringMember(c, at, "name");
      if (!name.ok()) return name.status();
      absl::StatusOr<std::string> expr = StringMember(c, at, "expr");
      if (!expr.ok()) return expr.status();
      defs.emplace_back(*name, *expr);
    }
    bool keep = true;
    if (j.contains("keep_existing")) {
      if (!j["keep_existing"].is_boolean()) {
        return ScriptError(at, "'keep_existing' must be a boolean");
      }
      keep = j["keep_existing"].get<bool>();
    }
    return input->Map(defs, keep);
  }
  if (*kind == "FlatMap") {
    absl::StatusOr<FlatMapSpec> spec = ParseFlatMap(j, at);
    if (!spec.ok()) return spec.status();
    return input->FlatMap(*std::move(spec));
  }
  if (*kind == "JoinPublic") {
    absl::StatusOr<std::string> table = StringMember(j, at, "table");
    if (!table.ok()) return table.status();
    absl::StatusOr<std::vector<std::string>> keys = StringList(j, at, "keys");
    if (!keys.ok()) return keys.status();
    return input->JoinPublic(*table, *keys);
  }
  if (*kind == "JoinPrivate") {
    absl::StatusOr<const Json*> right = Member(j, at, "right");
    if (!right.ok()) return right.status();
    absl::StatusOr<Query> other = ParseNode(**right, absl::StrCat(at, ".right"));
    if (!other.ok()) return other.status();
    absl::StatusOr<std::vector<std::string>> keys = StringList(j, at, "keys");
    if (!keys.ok()) return keys.status();
    absl::StatusOr<int64_t> lb = IntMember(j, at, "left_bound");
    if (!lb.ok()) return lb.status();
    absl::StatusOr<int64_t> rb = IntMember(j, at, "right_bound");
    if (!rb.ok()) return rb.status();
    return input->JoinPrivate(*other, *keys, *lb, *rb);
  }
  if (*kind == "TruncateById") {
    absl::StatusOr<int64_t> bound = IntMember(j, at, "bound");
    if (!bound.ok()) return bound.status();
    return input->TruncateById(*bound);
  }
  if (*kind == "GroupBy") {
    absl::StatusOr<const Json*> keyset = Member(j, at, "keyset");
    if (!keyset.ok()) return keyset.status();
    absl::StatusOr<KeySet> keys =
        ParseKeySet(**keyset, absl::StrCat(at, ".keyset"));
    if (!keys.ok()) return keys.status();
    return input->GroupBy(*std::move(keys));
  }
  absl::StatusOr<const Json*> agg = Member(j, at, "agg");
  if (!agg.ok()) return agg.status();
  absl::StatusOr<AggSpec> spec = ParseAgg(**agg, absl::StrCat(at, ".agg"));
  if (!spec.ok()) return spec.status();
  return input->Agg(*std::move(spec));
}

absl::StatusOr<Json> ParseJson(absl::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("ScriptError: not valid JSON");
  }
  return j;
}

}  // namespace

absl::StatusOr<std::vector<ScriptQuery>> ParseQueryScript(
    absl::string_view json_text) {
  absl::StatusOr<Json> doc = ParseJson(json_text);
  if (!doc.ok()) return doc.status();
  absl::Status status = CheckMembers(*doc, "script", {"queries"});
  if (!status.ok()) return status;
  absl::StatusOr<const Json*> queries = Member(*doc, "script", "queries");
  if (!queries.ok()) return queries.status();
  if (!(*queries)->is_array()) {
    return ScriptError("script", "'queries' must be a list");
  }
  std::vector<ScriptQuery> out;
  std::set<std::string> names;
  for (size_t i = 0; i < (*queries)->size(); ++i) {
    const Json& q = (**queries)[i];
    std::string where = absl::StrCat("queries[", i, "]");
    status = CheckMembers(q, where, {"name", "spend", "expr"});
    if (!status.ok()) return status;
    absl::StatusOr<std::string> name = StringMember(q, where, "name");
    if (!name.ok()) return name.status();
    if (name->empty() || !names.insert(*name).second) {
      return ScriptError(where, absl::StrCat("query name '", *name,
                                             "' is empty or repeated"));
    }
    absl::StatusOr<const Json*> spend_json = Member(q, where, "spend");
    if (!spend_json.ok()) return spend_json.status();
    std::string spend_text = (*spend_json)->is_string()
                                 ? (*spend_json)->get<std::string>()
                                 : (*spend_json)->dump();
    absl::StatusOr<ExtRational> spend = ExtRational::Parse(spend_text);
    if (!spend.ok()) {
      return ScriptError(absl::StrCat(where, ".spend"), spend.status().message());
    }
    absl::StatusOr<const Json*> expr = Member(q, where, "expr");
    if (!expr.ok()) return expr.status();
    absl::StatusOr<Query> query = ParseNode(**expr, absl::StrCat(where, ".expr"));
    if (!query.ok()) return query.status();
    out.push_back({*name, *spend, *std::move(query)});
  }
  return out;
}

absl::StatusOr<Query> ParseQueryNode(absl::string_view json_text) {
  absl::StatusOr<Json> doc = ParseJson(json_text);
  if (!doc.ok()) return doc.status();
  return ParseNode(*doc, "expr");
}

}  // namespace dpkit::cli
