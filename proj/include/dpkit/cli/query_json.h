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

// JSON query scripts.
//
//   {"queries": [{"name": "avg_income", "spend": "1/2", "expr": <node>}]}
//
// A node is an object whose "node" member names the Query builder step and
// whose "input" member (absent for Source) is the node it reads:
//
//   {"node": "Source", "table": "people"}
//   {"node": "Filter", "input": ..., "expr": "age > 40"}
//   {"node": "Map", "input": ..., "columns": [{"name": "n", "expr": "a + 1"}],
//    "keep_existing": true}
//   {"node": "FlatMap", "input": ..., "column": "tag", "max_rows": 3,
//    "split": {"column": "tags", "delimiter": ";"}}      // or
//    "values": ["a", "b * 2"]
//   {"node": "JoinPublic", "input": ..., "table": "zips", "keys": ["zip"]}
//   {"node": "JoinPrivate", "input": ..., "right": <node>, "keys": ["k"],
//    "left_bound": 1, "right_bound": 2}
//   {"node": "TruncateById", "input": ..., "bound": 2}
//   {"node": "GroupBy", "input": ..., "keyset": {"columns": ["zip"],
//    "tuples": [["10001"], ["10002"]]}}
//   {"node": "Agg", "input": ..., "agg": {"kind": "Average",
//    "column": "income", "low": 0, "high": 200000}}
//
// Agg kinds: Count; Sum and Average (column, low, high, optional
// granularity); Quantile (column, q, low, high, bins). Numbers that feed
// privacy accounting or bounds are read exactly from their JSON text, and
// may also be given as strings such as "1/3".

#ifndef DPKIT_CLI_QUERY_JSON_H_
#define DPKIT_CLI_QUERY_JSON_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpkit/query.h"
#include "dpkit/rational.h"

namespace dpkit::cli {

struct ScriptQuery {
  std::string name;
  ExtRational spend;
  Query query;
};

// "ScriptError: ..." (InvalidArgument) on malformed JSON, unknown node
// kinds or members, or duplicate query names.
absl::StatusOr<std::vector<ScriptQuery>> ParseQueryScript(
    absl::string_view json_text);

// One node tree, as it appears under "expr".
absl::StatusOr<Query> ParseQueryNode(absl::string_view json_text);

}  // namespace dpkit::cli

#endif  // DPKIT_CLI_QUERY_JSON_H_
