// Copyright 2026 The pwevent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pwevent/datagen/csv_ingest.h"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace pwevent {
namespace {

std::optional<double> ParseTimestamp(const std::string& field) {
  double v;
  if (absl::SimpleAtod(field, &v) && std::isfinite(v)) return v;
  std::tm tm = {};
  std::istringstream in(field);
  in >> std::get_time(&tm, "%Y-%m-%d %H:%M:%S");
  if (in.fail()) return std::nullopt;
  return static_cast<double>(timegm(&tm));
}

std::optional<size_t> FindColumn(const std::vector<std::string>& header,
                                 const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<size_t>(it - header.begin());
}

struct Row {
  std::string user;
  double time;
  int bucket;
};

}  // namespace

absl::Status GridSpec::Validate() const {
  if (!(lon_max > lon_min) || !(lat_max > lat_min)) {
    return absl::InvalidArgumentError("grid box must have max > min");
  }
  if (side < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid side must be at least 1, got ", side));
  }
  return absl::OkStatus();
}

std::optional<int> GridSpec::Cell(double lon, double lat) const {
  if (!(lon >= lon_min && lon <= lon_max && lat >= lat_min && lat <= lat_max)) {
    return std::nullopt;
  }
  auto index = [this](double v, double lo, double hi) {
    const int k = static_cast<int>(std::floor((v - lo) / (hi - lo) * side));
    return std::clamp(k, 0, side - 1);
  };
  const int col = index(lon, lon_min, lon_max);
  const int row = index(lat, lat_min, lat_max);
  return row * side + col;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

absl::StatusOr<IngestResult> IngestCsv(const std::string& path,
                                       const CsvSchema& schema,
                                       double slot_width) {
  if (!(slot_width > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("slot width must be positive, got ", slot_width));
  }
  const bool geo = !schema.category_col.has_value();
  if (geo) {
    if (absl::Status s = schema.grid.Validate(); !s.ok()) return s;
  }
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));

  IngestResult result;
  std::unordered_map<std::string, int> category_index;
  if (!geo && schema.category_map_path.has_value()) {
    std::ifstream map_in(*schema.category_map_path);
    if (map_in) {
      nlohmann::json j = nlohmann::json::parse(map_in, nullptr, false);
      if (j.is_discarded() || !j.is_array()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "category map ", *schema.category_map_path, " is not a list"));
      }
      for (const auto& v : j) {
        const std::string name = v.get<std::string>();
        category_index.emplace(name, result.categories.size());
        result.categories.push_back(name);
      }
    }
  }

  std::string line;
  if (!std::getline(in, line)) return result;
  const std::vector<std::string> header = SplitCsvLine(line);
  std::optional<size_t> user_col = FindColumn(header, schema.user_col);
  std::optional<size_t> time_col = FindColumn(header, schema.time_col);
  std::optional<size_t> cat_col, lon_col, lat_col;
  if (geo) {
    lon_col = FindColumn(header, schema.lon_col);
    lat_col = FindColumn(header, schema.lat_col);
  } else {
    cat_col = FindColumn(header, *schema.category_col);
  }
  if (!user_col || !time_col || (geo ? (!lon_col || !lat_col) : !cat_col)) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": header lacks a required column"));
  }

  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++result.stats.rows_read;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != header.size() || f[*user_col].empty()) {
      ++result.stats.malformed;
      continue;
    }
    std::optional<double> time = ParseTimestamp(f[*time_col]);
    if (!time) {
      ++result.stats.malformed;
      continue;
    }
    int bucket;
    if (geo) {
      double lon, lat;
      if (!absl::SimpleAtod(f[*lon_col], &lon) ||
          !absl::SimpleAtod(f[*lat_col], &lat)) {
        ++result.stats.malformed;
        continue;
      }
      std::optional<int> cell = schema.grid.Cell(lon, lat);
      if (!cell) {
        ++result.stats.out_of_box;
        continue;
      }
      bucket = *cell;
    } else {
      const std::string& name = f[*cat_col];
      if (name.empty()) {
        ++result.stats.malformed;
        continue;
      }
      auto [it, inserted] =
          category_index.emplace(name, result.categories.size());
      if (inserted) result.categories.push_back(name);
      bucket = it->second;
    }
    rows.push_back({f[*user_col], *time, bucket});
  }

  if (!geo && schema.category_map_path.has_value()) {
    std::ofstream map_out(*schema.category_map_path);
    map_out << nlohmann::json(result.categories).dump(2) << "\n";
    if (!map_out) {
      return absl::InternalError(
          absl::StrCat("cannot write ", *schema.category_map_path));
    }
  }
  if (rows.empty()) return result;

  double t0 = rows.front().time;
  for (const Row& r : rows) t0 = std::min(t0, r.time);
  std::unordered_map<std::string, size_t> user_index;
  std::map<std::pair<int64_t, size_t>, int> cells;
  int64_t max_slot = 0;
  for (const Row& r : rows) {
    auto [it, inserted] = user_index.emplace(r.user, result.user_ids.size());
    if (inserted) result.user_ids.push_back(r.user);
    const int64_t slot =
        static_cast<int64_t>(std::floor((r.time - t0) / slot_width)) + 1;
    max_slot = std::max(max_slot, slot);
    auto [cell, fresh] = cells.insert_or_assign({slot, it->second}, r.bucket);
    if (!fresh) ++result.stats.deduplicated;
  }

  const int d = geo ? schema.grid.dimension()
                    : std::max<int>(1, result.categories.size());
  const size_t n = result.user_ids.size();
  std::vector<std::vector<int32_t>> buckets(
      max_slot, std::vector<int32_t>(n, StreamBatch::kAbsent));
  for (const auto& [key, bucket] : cells) {
    buckets[key.first - 1][key.second] = bucket;
  }
  result.stats.bucketed = static_cast<int64_t>(cells.size());
  result.stream.reserve(max_slot);
  for (int64_t k = 0; k < max_slot; ++k) {
    result.stream.emplace_back(k + 1, d, std::move(buckets[k]));
  }
  return result;
}

}  // namespace pwevent
