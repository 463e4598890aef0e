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

#ifndef PWEVENT_DATAGEN_CSV_INGEST_H_
#define PWEVENT_DATAGEN_CSV_INGEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"

namespace pwevent {

struct GridSpec {
  double lon_min = 0.0;
  double lon_max = 1.0;
  double lat_min = 0.0;
  double lat_max = 1.0;
  int side = 10;

  absl::Status Validate() const;
  int dimension() const { return side * side; }
  // Row-major cell of (lon, lat), rows along latitude. Points on the upper
  // edge fall into the last row or column. nullopt outside the box.
  std::optional<int> Cell(double lon, double lat) const;
};

struct CsvSchema {
  std::string user_col = "user";
  std::string time_col = "time";
  // Category mode when set; geo mode otherwise.
  std::optional<std::string> category_col;
  std::string lon_col = "lon";
  std::string lat_col = "lat";
  GridSpec grid;
  // JSON file mapping category strings to buckets. Read if present,
  // extended with new categories in first-appearance order, written back.
  std::optional<std::string> category_map_path;
};

struct IngestStats {
  int64_t rows_read = 0;
  int64_t bucketed = 0;
  int64_t malformed = 0;
  int64_t out_of_box = 0;
  // Earlier rows for the same (user, slot) replaced by a later one.
  int64_t deduplicated = 0;
};

struct IngestResult {
  std::vector<StreamBatch> stream;
  std::vector<std::string> user_ids;
  std::vector<std::string> categories;
  IngestStats stats;
};

// Reads a headered CSV. Timestamps are numbers or "YYYY-MM-DD HH:MM:SS"
// (read as UTC); slot k covers [t0 + (k-1) w, t0 + k w) where t0 is the
// earliest timestamp in the file.
absl::StatusOr<IngestResult> IngestCsv(const std::string& path,
                                       const CsvSchema& schema,
                                       double slot_width);

// Splits one CSV record, honouring double quotes.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace pwevent

#endif  // PWEVENT_DATAGEN_CSV_INGEST_H_
