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

#include "dpkit/measurement.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {
namespace {

absl::Status RequireSymmetricDifference(const Metric& metric,
                                        absl::string_view what) {
  if (metric.kind() == Metric::Kind::kSymmetricDifference) {
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "MetricMismatch: ", what, " needs SymmetricDifference, got ",
      metric.ToString()));
}

absl::StatusOr<size_t> NumericColumn(const TableDomain& domain,
                                     const std::string& column) {
  absl::StatusOr<size_t> index = domain.schema().Require(column);
  if (!index.ok()) return index.status();
  ColumnType type = domain.schema().column(*index).type;
  if (type == ColumnType::kText) {
    return absl::InvalidArgumentError(absl::StrCat(
        "TypeError: column '", column, "' is text, not numeric"));
  }
  return *index;
}

Rational ToRational(const Value& v) {
  if (const auto* i = std::get_if<int64_t>(&v)) return Rational(*i);
  return Rational(std::get<double>(v));
}

BigInt RoundHalfAwayFromZero(const Rational& r) {
  if (r < 0) return -Floor(-r + Rational(1, 2));
  return Floor(r + Rational(1, 2));
}

int64_t SaturateToInt64(const BigInt& v) {
  static const BigInt kMax(std::numeric_limits<int64_t>::max());
  static const BigInt kMin(std::numeric_limits<int64_t>::min());
  if (v > kMax) return std::numeric_limits<int64_t>::max();
  if (v < kMin) return std::numeric_limits<int64_t>::min();
  return static_cast<int64_t>(v);
}

// Fixed-point clamped sum. `sensitivity` is in grid units per row.
struct FixedPointSum {
  size_t column;
  Rational low, high, granularity;
  BigInt sensitivity;

  BigInt Units(const Table& table) const {
    BigInt total = 0;
    for (const Row& row : table.rows()) {
      Rational v = std::clamp(ToRational(row[column]), low, high);
      BigInt units = RoundHalfAwayFromZero(v / granularity);
      total += std::clamp(units, BigInt(-sensitivity), sensitivity);
    }
    return total;
  }
};

absl::StatusOr<FixedPointSum> MakeFixedPointSum(const TableDomain& domain,
                                                const std::string& column,
                                                const Rational& low,
                                                const Rational& high,
                                                const Rational& granularity) {
  absl::StatusOr<size_t> index = NumericColumn(domain, column);
  if (!index.ok()) return index.status();
  if (low > high) {
    return absl::InvalidArgumentError(
        absl::StrCat("BadBounds: low ", RationalToString(low),
                     " exceeds high ", RationalToString(high)));
  }
  if (granularity <= 0) {
    return absl::InvalidArgumentError(
        "NonPositiveGranularity: granularity must be positive");
  }
  BigInt s = Ceil(std::max(abs(low), abs(high)) / granularity);
  // An all-zero range still gets a valid (unit) noise scale.
  if (s < 1) s = 1;
  return FixedPointSum{*index, low, high, granularity, s};
}

std::string EncodeKey(const Row& key) {
  std::vector<std::string> parts;
  for (const Value& v : key) {
    parts.push_back(
        absl::StrCat(ColumnTypeName(TypeOf(v)), ":", ValueToString(v)));
  }
  return absl::StrJoin(parts, "\x1f");
}

absl::Status CheckCommonInput(const std::vector<Measurement>& parts) {
  if (parts.empty()) {
    return absl::InvalidArgumentError("EmptyList: nothing to compose");
  }
  for (const Measurement& m : parts) {
    if (!(m.input_domain() == parts.front().input_domain())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "DomainMismatch: '", m.name(), "' has input domain ",
          m.input_domain().ToString(), ", expected ",
          parts.front().input_domain().ToString()));
    }
    if (!(m.input_metric() == parts.front().input_metric())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MetricMismatch: '", m.name(), "' has input metric ",
          m.input_metric().ToString(), ", expected ",
          parts.front().input_metric().ToString()));
    }
    if (m.output_measure() != parts.front().output_measure()) {
      return absl::InvalidArgumentError(
          absl::StrCat("MeasureMismatch: '", m.name(), "' uses ",
                       MeasureName(m.output_measure()), ", expected ",
                       MeasureName(parts.front().output_measure())));
    }
  }
  return absl::OkStatus();
}

}  // namespace

Release Release::Scalar(Value value) {
  Release r(Kind::kScalar);
  r.scalar_ = std::move(value);
  return r;
}

Release Release::Tuple(std::vector<Release> parts) {
  Release r(Kind::kTuple);
  r.parts_ = std::move(parts);
  return r;
}

Release Release::OfTable(Table table) {
  Release r(Kind::kTable);
  r.table_ = std::move(table);
  return r;
}

std::string Release::ToString() const {
  switch (kind_) {
    case Kind::kScalar:
      return ValueToString(scalar_);
    case Kind::kTuple: {
      std::vector<std::string> parts;
      for (const Release& p : parts_) parts.push_back(p.ToString());
      return absl::StrCat("(", absl::StrJoin(parts, ", "), ")");
    }
    case Kind::kTable:
      return absl::StrCat("table(", table_->size(), " rows)");
  }
  return "";
}

Measurement::Measurement(std::string name, DatasetDomain input_domain,
                         Metric input_metric, Measure output_measure,
                         DistanceMap privacy_map, EvalFn eval,
                         std::optional<ColumnType> scalar_type)
    : name_(std::move(name)),
      input_domain_(std::move(input_domain)),
      input_metric_(std::move(input_metric)),
      output_measure_(output_measure),
      privacy_map_(std::move(privacy_map)),
      eval_(std::move(eval)),
      scalar_type_(scalar_type) {}

absl::StatusOr<Release> Measurement::Invoke(const Dataset& input,
                                            RngStream& rng) const {
  absl::Status status = input_domain_.Validate(input);
  if (!status.ok()) return status;
  return eval_(input, rng);
}

absl::StatusOr<Measurement> ChainTM(const Transformation& transformation,
                                    const Measurement& measurement) {
  if (!(transformation.output_domain() == measurement.input_domain())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DomainMismatch: '", transformation.name(), "' produces ",
        transformation.output_domain().ToString(), " but '",
        measurement.name(), "' expects ",
        measurement.input_domain().ToString()));
  }
  if (!(transformation.output_metric() == measurement.input_metric())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MetricMismatch: '", transformation.name(), "' outputs under ",
        transformation.output_metric().ToString(), " but '",
        measurement.name(), "' expects ",
        measurement.input_metric().ToString()));
  }
  Transformation t = transformation;
  Measurement m = measurement;
  return Measurement(
      absl::StrCat(transformation.name(), " | ", measurement.name()),
      transformation.input_domain(), transformation.input_metric(),
      measurement.output_measure(),
      ComposeMaps(measurement.privacy_map(), transformation.stability()),
      [t, m](const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        absl::StatusOr<Dataset> mid = t.Apply(in);
        if (!mid.ok()) return mid.status();
        return m.Invoke(*mid, rng);
      },
      measurement.scalar_type());
}

absl::StatusOr<Measurement> MakeCount(const TableDomain& domain,
                                      const NoiseSpec& noise) {
  absl::StatusOr<IntegerNoise> z = IntegerNoise::Create(noise, 1);
  if (!z.ok()) return z.status();
  return Measurement(
      absl::StrCat("count ", noise.ToString()), domain,
      Metric::SymmetricDifference(), noise.measure(), noise.privacy_map(),
      [z = *z](const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        BigInt n(in.table().size());
        return Release::Scalar(SaturateToInt64(n + z.Sample(rng)));
      },
      ColumnType::kInt64);
}

Rational DefaultGranularity() { return Rational(1, 100); }

absl::StatusOr<Measurement> MakeSum(const TableDomain& domain,
                                    const std::string& column,
                                    const Rational& low, const Rational& high,
                                    const Rational& granularity,
                                    const NoiseSpec& noise) {
  absl::StatusOr<FixedPointSum> sum =
      MakeFixedPointSum(domain, column, low, high, granularity);
  if (!sum.ok()) return sum.status();
  absl::StatusOr<IntegerNoise> z = IntegerNoise::Create(noise, sum->sensitivity);
  if (!z.ok()) return z.status();
  return Measurement(
      absl::StrCat("sum ", column, " in [", RationalToString(low), ", ",
                   RationalToString(high), "] ", noise.ToString()),
      domain, Metric::SymmetricDifference(), noise.measure(),
      noise.privacy_map(),
      [sum = *sum, z = *z](const Dataset& in,
                           RngStream& rng) -> absl::StatusOr<Release> {
        BigInt units = sum.Units(in.table()) + z.Sample(rng);
        Rational value = sum.granularity * Rational(units);
        return Release::Scalar(value.convert_to<double>());
      },
      ColumnType::kFloat64);
}

absl::StatusOr<Measurement> MakeAverage(const TableDomain& domain,
                                        const std::string& column,
                                        const Rational& low,
                                        const Rational& high,
                                        const Rational& granularity,
                                        const NoiseSpec& noise) {
  absl::StatusOr<FixedPointSum> sum =
      MakeFixedPointSum(domain, column, low, high, granularity);
  if (!sum.ok()) return sum.status();
  NoiseSpec half = noise.Scaled(Rational(1, 2));
  absl::StatusOr<IntegerNoise> sum_noise =
      IntegerNoise::Create(half, sum->sensitivity);
  if (!sum_noise.ok()) return sum_noise.status();
  absl::StatusOr<IntegerNoise> count_noise = IntegerNoise::Create(half, 1);
  if (!count_noise.ok()) return count_noise.status();
  DistanceMap halves[] = {half.privacy_map(), half.privacy_map()};
  absl::StatusOr<DistanceMap> privacy = SumMaps(halves);
  if (!privacy.ok()) return privacy.status();
  return Measurement(
      absl::StrCat("average ", column, " in [", RationalToString(low), ", ",
                   RationalToString(high), "] ", noise.ToString()),
      domain, Metric::SymmetricDifference(), noise.measure(), *privacy,
      [sum = *sum, sum_noise = *sum_noise, count_noise = *count_noise](
          const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        RngStream sum_rng = rng.Derive("sum");
        RngStream count_rng = rng.Derive("count");
        BigInt units = sum.Units(in.table()) + sum_noise.Sample(sum_rng);
        BigInt count =
            BigInt(in.table().size()) + count_noise.Sample(count_rng);
        if (count < 1) count = 1;
        Rational value =
            sum.granularity * Rational(units) / Rational(count);
        return Release::Scalar(value.convert_to<double>());
      },
      ColumnType::kFloat64);
}

Rational QuantileBinMidpoint(const Rational& low, const Rational& high,
                             int64_t bins, int64_t i) {
  return low + (high - low) * Rational(2 * i + 1, 2 * bins);
}

absl::StatusOr<Measurement> MakeQuantile(const TableDomain& domain,
                                         const std::string& column,
                                         const Rational& q, const Rational& low,
                                         const Rational& high, int64_t bins,
                                         const ExtRational& epsilon_unit) {
  absl::StatusOr<size_t> index = NumericColumn(domain, column);
  if (!index.ok()) return index.status();
  if (!(low < high)) {
    return absl::InvalidArgumentError(
        absl::StrCat("BadBounds: need low < high, got [",
                     RationalToString(low), ", ", RationalToString(high), "]"));
  }
  if (q < 0 || q > 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "BadQuantile: q must lie in [0, 1], got ", RationalToString(q)));
  }
  if (bins < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("BadBins: need at least one bin, got ", bins));
  }
  if (epsilon_unit.is_zero()) {
    return absl::InvalidArgumentError(
        "NonPositiveEpsilon: epsilon must be positive");
  }
  std::vector<Rational> midpoints;
  for (int64_t i = 0; i < bins; ++i) {
    midpoints.push_back(QuantileBinMidpoint(low, high, bins, i));
  }
  size_t col = *index;
  return Measurement(
      absl::StrCat("quantile ", column, " q=", RationalToString(q), " in [",
                   RationalToString(low), ", ", RationalToString(high), "] ",
                   bins, " bins eps=", epsilon_unit.ToString()),
      domain, Metric::SymmetricDifference(), Measure::kPureDp,
      DistanceMap::Linear(epsilon_unit),
      [col, q, midpoints, epsilon_unit](
          const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        std::vector<Rational> values;
        values.reserve(in.table().size());
        for (const Row& row : in.table().rows()) {
          values.push_back(ToRational(row[col]));
        }
        std::sort(values.begin(), values.end());
        Rational target = q * Rational(static_cast<int64_t>(values.size()));
        std::vector<Rational> score;
        for (const Rational& m : midpoints) {
          int64_t below = std::lower_bound(values.begin(), values.end(), m) -
                          values.begin();
          score.push_back(-abs(Rational(below) - target));
        }
        const Rational best = *std::max_element(score.begin(), score.end());
        const uint64_t n = midpoints.size();
        while (true) {
          uint64_t i = rng.UniformBelow(n);
          bool accept =
              epsilon_unit.is_infinite()
                  ? score[i] == best
                  : SampleBernoulliExp(
                        epsilon_unit.value() * (best - score[i]) / 2, rng);
          if (accept) return Release::Scalar(midpoints[i].convert_to<double>());
        }
      },
      ColumnType::kFloat64);
}

absl::StatusOr<Measurement> ComposeSequential(
    const std::vector<Measurement>& parts) {
  absl::Status status = CheckCommonInput(parts);
  if (!status.ok()) return status;
  std::vector<DistanceMap> maps;
  std::vector<std::string> names;
  for (const Measurement& m : parts) {
    maps.push_back(m.privacy_map());
    names.push_back(m.name());
  }
  absl::StatusOr<DistanceMap> privacy = SumMaps(maps);
  if (!privacy.ok()) return privacy.status();
  return Measurement(
      absl::StrCat("sequential(", absl::StrJoin(names, "; "), ")"),
      parts.front().input_domain(), parts.front().input_metric(),
      parts.front().output_measure(), *privacy,
      [parts](const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        std::vector<Release> out;
        for (size_t i = 0; i < parts.size(); ++i) {
          RngStream part_rng = rng.Derive(static_cast<uint64_t>(i));
          absl::StatusOr<Release> r = parts[i].Invoke(in, part_rng);
          if (!r.ok()) return r.status();
          out.push_back(*std::move(r));
        }
        return Release::Tuple(std::move(out));
      });
}

absl::StatusOr<Measurement> ComposePerGroup(
    const std::vector<std::string>& key_columns,
    const std::vector<Row>& key_tuples, const Measurement& per_group,
    const std::string& value_column) {
  if (per_group.input_domain().kind() != Dataset::Kind::kTable) {
    return absl::InvalidArgumentError(
        "DomainMismatch: per-group measurement must take a single table");
  }
  absl::Status status =
      RequireSymmetricDifference(per_group.input_metric(), "per-group input");
  if (!status.ok()) return status;
  if (per_group.privacy_map().shape() == DistanceMap::Shape::kGeneral) {
    return absl::FailedPreconditionError(absl::StrCat(
        "NonLinearPrivacyFunction: per-group privacy map ",
        per_group.privacy_map().ToString(), " is neither linear nor quadratic"));
  }
  if (!per_group.scalar_type()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "NonScalarRelease: '", per_group.name(), "' does not release a scalar"));
  }
  const TableDomain& domain = per_group.input_domain().table();
  const Schema& schema = domain.schema();
  std::vector<size_t> key_index;
  std::vector<Column> out_columns;
  for (const std::string& key : key_columns) {
    std::optional<size_t> i = schema.IndexOf(key);
    if (!i) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MissingKeyColumn: '", key, "' is not in ", schema.ToString()));
    }
    key_index.push_back(*i);
    out_columns.push_back(schema.column(*i));
  }
  out_columns.push_back({value_column, *per_group.scalar_type()});
  absl::StatusOr<Schema> out_schema = Schema::Create(out_columns);
  if (!out_schema.ok()) return out_schema.status();

  std::vector<Row> keys;
  std::set<Row, decltype(&RowLess)> seen(&RowLess);
  for (const Row& tuple : key_tuples) {
    if (tuple.size() != key_columns.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "TypeMismatch: key tuple has ", tuple.size(), " values for ",
          key_columns.size(), " key columns"));
    }
    for (size_t j = 0; j < tuple.size(); ++j) {
      if (TypeOf(tuple[j]) != out_columns[j].type) {
        return absl::InvalidArgumentError(absl::StrCat(
            "TypeMismatch: key value ", ValueToString(tuple[j]), " for '",
            key_columns[j], "' is not ", ColumnTypeName(out_columns[j].type)));
      }
    }
    if (seen.insert(tuple).second) keys.push_back(tuple);
  }

  Schema in_schema = schema;
  Schema result_schema = *out_schema;
  Measurement inner = per_group;
  return Measurement(
      absl::StrCat("per_group [", absl::StrJoin(key_columns, ","), "] x",
                   keys.size(), " (", per_group.name(), ")"),
      domain,
      Metric::GroupedBy(key_columns, Metric::SymmetricDifference()),
      per_group.output_measure(), per_group.privacy_map(),
      [key_index, keys, inner, in_schema, result_schema](
          const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        std::map<Row, std::vector<Row>, decltype(&RowLess)> groups(&RowLess);
        for (const Row& key : keys) groups[key];
        for (const Row& row : in.table().rows()) {
          Row key;
          for (size_t i : key_index) key.push_back(row[i]);
          auto it = groups.find(key);
          if (it != groups.end()) it->second.push_back(row);
        }
        RngStream group_root = rng.Derive("group");
        std::vector<Row> out;
        out.reserve(keys.size());
        for (const Row& key : keys) {
          RngStream group_rng = group_root.Derive(EncodeKey(key));
          absl::StatusOr<Release> r = inner.Invoke(
              Dataset(UncheckedTable(in_schema, std::move(groups[key]))),
              group_rng);
          if (!r.ok()) return r.status();
          Row result = key;
          result.push_back(r->scalar());
          out.push_back(std::move(result));
        }
        return Release::OfTable(UncheckedTable(result_schema, std::move(out)));
      });
}

absl::StatusOr<Measurement> ComposeOverSubsets(
    const std::vector<Measurement>& parts) {
  absl::Status status = CheckCommonInput(parts);
  if (!status.ok()) return status;
  const Measurement& first = parts.front();
  if (first.input_domain().kind() != Dataset::Kind::kTable) {
    return absl::InvalidArgumentError(
        "DomainMismatch: subset measurements must take a single table");
  }
  status = RequireSymmetricDifference(first.input_metric(), "subset input");
  if (!status.ok()) return status;
  DistanceMap::Shape shape = first.privacy_map().shape();
  ExtRational largest;
  for (const Measurement& m : parts) {
    if (m.privacy_map().shape() != shape ||
        shape == DistanceMap::Shape::kGeneral) {
      return absl::FailedPreconditionError(
          "NonLinearPrivacyFunction: subset privacy maps must all be linear "
          "or all be quadratic");
    }
    largest = Max(largest, m.privacy_map().coefficient());
  }
  std::vector<std::string> names;
  for (const Measurement& m : parts) names.push_back(m.name());
  return Measurement(
      absl::StrCat("over_subsets(", absl::StrJoin(names, "; "), ")"),
      DatasetDomain::List(first.input_domain().table(), parts.size()),
      Metric::BoundedLists(Metric::SymmetricDifference()),
      first.output_measure(),
      shape == DistanceMap::Shape::kLinear ? DistanceMap::Linear(largest)
                                           : DistanceMap::Quadratic(largest),
      [parts](const Dataset& in, RngStream& rng) -> absl::StatusOr<Release> {
        std::vector<Release> out;
        for (size_t i = 0; i < parts.size(); ++i) {
          RngStream part_rng = rng.Derive(static_cast<uint64_t>(i));
          absl::StatusOr<Release> r =
              parts[i].Invoke(Dataset(in.tables()[i]), part_rng);
          if (!r.ok()) return r.status();
          out.push_back(*std::move(r));
        }
        return Release::Tuple(std::move(out));
      });
}

}  // namespace dpkit
