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


#include "testing/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace dpkit::testing {
namespace {

std::string CellKey(const Value& v) {
  switch (v.index()) {
    case 0:
      return "i" + std::to_string(std::get<int64_t>(v));
    case 1: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "f%.17g", std::get<double>(v));
      return buf;
    }
    default:
      return "s" + std::get<std::string>(v);
  }
}

std::string RowKey(const Row& row) {
  std::string key;
  for (const Value& v : row) {
    std::string cell = CellKey(v);
    key += std::to_string(cell.size()) + ":" + cell;
  }
  return key;
}

std::map<std::string, int64_t> Counts(std::span<const Row> rows) {
  std::map<std::string, int64_t> counts;
  for (const Row& row : rows) ++counts[RowKey(row)];
  return counts;
}

int64_t CountDistance(const std::map<std::string, int64_t>& a,
                      const std::map<std::string, int64_t>& b) {
  int64_t d = 0;
  for (const auto& [key, n] : a) {
    auto it = b.find(key);
    d += std::llabs(n - (it == b.end() ? 0 : it->second));
  }
  for (const auto& [key, n] : b) {
    if (!a.contains(key)) d += n;
  }
  return d;
}

}  // namespace

int64_t MultisetDistance(const Table& a, const Table& b) {
  return CountDistance(Counts(a.rows()), Counts(b.rows()));
}

int64_t IdDistance(const std::vector<Table>& a, const std::vector<Table>& b,
                   const std::string& id_column) {
  // id -> per-table row strings.
  using Groups = std::map<std::string, std::vector<std::map<std::string, int64_t>>>;
  auto group = [&](const std::vector<Table>& tables) {
    Groups groups;
    for (size_t t = 0; t < tables.size(); ++t) {
      size_t id = *tables[t].schema().IndexOf(id_column);
      for (const Row& row : tables[t].rows()) {
        auto& slot = groups[CellKey(row[id])];
        slot.resize(tables.size());
        ++slot[t][RowKey(row)];
      }
    }
    for (auto& [id, slot] : groups) slot.resize(tables.size());
    return groups;
  };
  Groups ga = group(a), gb = group(b);
  int64_t d = 0;
  for (const auto& [id, slot] : ga) {
    auto it = gb.find(id);
    if (it == gb.end()) {
      d += 1;
    } else if (slot != it->second) {
      d += 2;
    }
  }
  for (const auto& [id, slot] : gb) {
    if (!ga.contains(id)) d += 1;
  }
  return d;
}

int64_t OracleDistance(const Metric& metric, const Dataset& a,
                       const Dataset& b) {
  switch (metric.kind()) {
    case Metric::Kind::kSymmetricDifference:
    case Metric::Kind::kGroupedBy:
      return MultisetDistance(a.table(), b.table());
    case Metric::Kind::kAddRemoveIds:
      return IdDistance(a.tables(), b.tables(), metric.id_column());
    case Metric::Kind::kTableTuple: {
      int64_t d = 0;
      for (size_t i = 0; i < a.tables().size(); ++i) {
        d += OracleDistance(metric.components()[i], a.tables()[i],
                            b.tables()[i]);
      }
      return d;
    }
    case Metric::Kind::kBoundedLists: {
      int64_t d = 0;
      size_t n = std::max(a.tables().size(), b.tables().size());
      for (size_t i = 0; i < n; ++i) {
        if (i >= a.tables().size()) {
          d += b.tables()[i].size();
        } else if (i >= b.tables().size()) {
          d += a.tables()[i].size();
        } else {
          d += MultisetDistance(a.tables()[i], b.tables()[i]);
        }
      }
      return d;
    }
  }
  return -1;
}

StabilityReport CheckStability(
    const Transformation& t, int64_t n,
    const std::function<std::pair<Dataset, Dataset>()>& draw,
    const std::function<int64_t(const Dataset&, const Dataset&)>& bound) {
  StabilityReport report;
  for (int64_t i = 0; i < n; ++i) {
    auto [x, y] = draw();
    absl::StatusOr<Dataset> tx = t.Apply(x);
    absl::StatusOr<Dataset> ty = t.Apply(y);
    ++report.pairs;
    if (!tx.ok() || !ty.ok()) {
      ++report.violations;
      if (report.first.empty()) {
        report.first = std::string(tx.ok() ? ty.status().message()
                                           : tx.status().message());
      }
      continue;
    }
    int64_t d_in = OracleDistance(t.input_metric(), x, y);
    int64_t d_out = OracleDistance(t.output_metric(), *tx, *ty);
    ExtRational allowed = bound ? ExtRational(bound(x, y))
                                : t.stability()(ExtRational(d_in));
    if (ExtRational(d_out) > allowed) {
      ++report.violations;
      if (report.first.empty()) {
        report.first = t.name() + ": d_in=" + std::to_string(d_in) +
                       " d_out=" + std::to_string(d_out) +
                       " allowed=" + allowed.ToString();
      }
    }
  }
  return report;
}

std::pair<Table, Table> RandomPair(const Schema& schema,
                                   const ValuePools& pools, size_t max_rows,
                                   std::mt19937_64& rng) {
  Table x = RandomTable(schema, pools, max_rows, rng);
  if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.7) {
    while (true) {
      Table y = RandomNeighbor(x, pools, 3, rng);
      if (y.size() <= max_rows) return {x, y};
    }
  }
  return {x, RandomTable(schema, pools, max_rows, rng)};
}

Table RandomTable(const Schema& schema, const ValuePools& pools,
                  size_t max_rows, std::mt19937_64& rng) {
  size_t n = std::uniform_int_distribution<size_t>(0, max_rows)(rng);
  std::vector<Row> rows;
  for (size_t i = 0; i < n; ++i) {
    Row row;
    for (const std::vector<Value>& pool : pools) {
      row.push_back(
          pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)]);
    }
    rows.push_back(std::move(row));
  }
  return *Table::Create(schema, std::move(rows));
}

Table RandomNeighbor(const Table& t, const ValuePools& pools, int64_t k,
                     std::mt19937_64& rng) {
  std::vector<Row> rows(t.rows().begin(), t.rows().end());
  int64_t steps = std::uniform_int_distribution<int64_t>(0, k)(rng);
  for (int64_t s = 0; s < steps; ++s) {
    bool remove = !rows.empty() && (rng() & 1);
    if (remove) {
      rows.erase(rows.begin() + std::uniform_int_distribution<size_t>(
                                    0, rows.size() - 1)(rng));
    } else {
      Row row;
      for (const std::vector<Value>& pool : pools) {
        row.push_back(pool[std::uniform_int_distribution<size_t>(
            0, pool.size() - 1)(rng)]);
      }
      rows.push_back(std::move(row));
    }
  }
  std::shuffle(rows.begin(), rows.end(), rng);
  return *Table::Create(t.schema(), std::move(rows));
}

std::vector<Table> AllUnitNeighbors(const Table& t, const ValuePools& pools) {
  std::vector<Table> out;
  std::vector<Row> base(t.rows().begin(), t.rows().end());
  for (size_t i = 0; i < base.size(); ++i) {
    std::vector<Row> rows = base;
    rows.erase(rows.begin() + i);
    out.push_back(*Table::Create(t.schema(), std::move(rows)));
  }
  std::vector<size_t> index(pools.size(), 0);
  while (true) {
    Row row;
    for (size_t c = 0; c < pools.size(); ++c) row.push_back(pools[c][index[c]]);
    std::vector<Row> rows = base;
    rows.push_back(std::move(row));
    out.push_back(*Table::Create(t.schema(), std::move(rows)));
    size_t c = 0;
    while (c < pools.size() && ++index[c] == pools[c].size()) index[c++] = 0;
    if (c == pools.size()) break;
  }
  return out;
}

std::vector<long double> GeometricPmf(long double scale, int64_t lo,
                                      int64_t hi) {
  long double r = std::exp(-1.0L / scale);
  long double z = (1 - r) / (1 + r);
  std::vector<long double> p;
  for (int64_t k = lo; k <= hi; ++k) {
    p.push_back(z * std::pow(r, static_cast<long double>(std::llabs(k))));
  }
  return p;
}

std::vector<long double> DiscreteGaussianPmf(long double sigma2, int64_t lo,
                                             int64_t hi) {
  auto weight = [&](int64_t k) {
    return std::exp(-static_cast<long double>(k) * k / (2 * sigma2));
  };
  int64_t wide = static_cast<int64_t>(std::ceil(15 * std::sqrt(sigma2))) + 2;
  long double z = 0;
  for (int64_t k = -wide; k <= wide; ++k) z += weight(k);
  std::vector<long double> p;
  for (int64_t k = lo; k <= hi; ++k) p.push_back(weight(k) / z);
  return p;
}

long double MaxLogRatio(const std::vector<long double>& p,
                        const std::vector<long double>& q) {
  long double worst = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if ((p[i] > 0) != (q[i] > 0)) {
      return std::numeric_limits<long double>::infinity();
    }
    if (p[i] > 0) worst = std::max(worst, std::fabs(std::log(p[i] / q[i])));
  }
  return worst;
}

long double RenyiDivergence(const std::vector<long double>& p,
                            const std::vector<long double>& q,
                            long double alpha) {
  long double sum = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) return std::numeric_limits<long double>::infinity();
    sum += std::pow(p[i], alpha) * std::pow(q[i], 1 - alpha);
  }
  return std::log(sum) / (alpha - 1);
}

std::vector<long double> QuantileMechanismPmf(const std::vector<double>& data,
                                              double q, double low,
                                              double high, int64_t bins,
                                              double epsilon) {
  long double n = data.size();
  std::vector<long double> utility;
  for (int64_t i = 0; i < bins; ++i) {
    long double mid =
        low + (static_cast<long double>(high) - low) * (2 * i + 1) / (2 * bins);
    long double below = 0;
    for (double v : data) below += v < mid ? 1 : 0;
    utility.push_back(-std::fabs(below - q * n));
  }
  long double best = *std::max_element(utility.begin(), utility.end());
  std::vector<long double> pmf;
  long double z = 0;
  for (long double u : utility) {
    pmf.push_back(std::exp(epsilon * (u - best) / 2));
    z += pmf.back();
  }
  for (long double& p : pmf) p /= z;
  return pmf;
}

long double TotalVariation(const std::vector<int64_t>& counts,
                           const std::vector<long double>& pmf) {
  long double n = 0;
  for (int64_t c : counts) n += c;
  long double tv = 0;
  for (size_t i = 0; i < pmf.size(); ++i) {
    tv += std::fabs(counts[i] / n - pmf[i]);
  }
  return tv / 2;
}

}  // namespace dpkit::testing
