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

#include "pwevent/harness/config.h"

#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace pwevent {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr MechanismKind kAllMechanisms[] = {
    MechanismKind::kPbd,    MechanismKind::kPba, MechanismKind::kDpbd,
    MechanismKind::kDpba,   MechanismKind::kBd,  MechanismKind::kBa,
    MechanismKind::kUniform};

ScheduleSpec::Kind ParseScheduleKind(const std::string& s) {
  if (s == "constant") return ScheduleSpec::Kind::kConstant;
  if (s == "periodic") return ScheduleSpec::Kind::kPeriodic;
  if (s == "scripted") return ScheduleSpec::Kind::kScripted;
  if (s == "random") return ScheduleSpec::Kind::kRandom;
  throw std::invalid_argument("unknown schedule kind '" + s + "'");
}

std::string_view ScheduleKindName(ScheduleSpec::Kind k) {
  switch (k) {
    case ScheduleSpec::Kind::kConstant:
      return "constant";
    case ScheduleSpec::Kind::kPeriodic:
      return "periodic";
    case ScheduleSpec::Kind::kScripted:
      return "scripted";
    case ScheduleSpec::Kind::kRandom:
      return "random";
  }
  return "random";
}

DynamicRequirement ParseTuple(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument(
        "scripted requirement must be [w_B, E_B, w_F, E_F]");
  }
  return {j[0].get<int>(), j[1].get<double>(), j[2].get<int>(),
          j[3].get<double>()};
}

void ParseDataset(const json& j, DatasetSpec& d) {
  d.kind = j.value("kind", d.kind);
  d.slots = j.value("slots", d.slots);
  d.users = j.value("users", d.users);
  d.path = j.value("path", d.path);
  d.slot_width = j.value("slot_width", d.slot_width);
  CsvSchema& s = d.schema;
  s.user_col = j.value("user_col", s.user_col);
  s.time_col = j.value("time_col", s.time_col);
  if (j.contains("category_col")) {
    s.category_col = j["category_col"].get<std::string>();
  }
  if (j.contains("category_map")) {
    s.category_map_path = j["category_map"].get<std::string>();
  }
  s.lon_col = j.value("lon_col", s.lon_col);
  s.lat_col = j.value("lat_col", s.lat_col);
  if (j.contains("grid")) {
    const json& g = j["grid"];
    s.grid.lon_min = g.value("lon_min", s.grid.lon_min);
    s.grid.lon_max = g.value("lon_max", s.grid.lon_max);
    s.grid.lat_min = g.value("lat_min", s.grid.lat_min);
    s.grid.lat_max = g.value("lat_max", s.grid.lat_max);
    s.grid.side = g.value("side", s.grid.side);
  }
}

void ParseSchedule(const json& j, ScheduleSpec& s) {
  if (j.contains("kind")) s.kind = ParseScheduleKind(j["kind"]);
  s.period = j.value("period", s.period);
  s.backward_window = j.value("backward_window", s.backward_window);
  s.backward_budget = j.value("backward_budget", s.backward_budget);
  if (j.contains("script")) {
    s.script.clear();
    for (const json& slot : j["script"]) {
      std::vector<DynamicRequirement> reqs;
      for (const json& r : slot) reqs.push_back(ParseTuple(r));
      s.script.push_back(std::move(reqs));
    }
  }
}

}  // namespace

absl::StatusOr<MechanismKind> ParseMechanism(std::string_view name) {
  const std::string upper = absl::AsciiStrToUpper(std::string(name));
  for (MechanismKind k : kAllMechanisms) {
    if (absl::AsciiStrToUpper(std::string(MechanismName(k))) == upper) return k;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name),
                   "' (expected PBD, PBA, DPBD, DPBA, BD, "
                   "BA or Uniform)"));
}

std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kPbd:
      return "PBD";
    case MechanismKind::kPba:
      return "PBA";
    case MechanismKind::kDpbd:
      return "DPBD";
    case MechanismKind::kDpba:
      return "DPBA";
    case MechanismKind::kBd:
      return "BD";
    case MechanismKind::kBa:
      return "BA";
    case MechanismKind::kUniform:
      return "Uniform";
  }
  return "unknown";
}

bool IsDynamic(MechanismKind kind) {
  return kind == MechanismKind::kDpbd || kind == MechanismKind::kDpba;
}

bool IsHomogeneous(MechanismKind kind) {
  return kind == MechanismKind::kBd || kind == MechanismKind::kBa ||
         kind == MechanismKind::kUniform;
}

absl::Status ExperimentConfig::Validate() const {
  if (mechanisms.empty() || budgets.empty() || windows.empty() ||
      ratios.empty()) {
    return absl::InvalidArgumentError("parameter grids must be nonempty");
  }
  if (repeats < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("repeats must be at least 1, got ", repeats));
  }
  for (double e : budgets) {
    if (!(e > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("budgets must be positive, got ", e));
    }
  }
  for (int w : windows) {
    if (w < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("windows must be at least 1, got ", w));
    }
  }
  for (double o : ratios) {
    if (!(o >= 0.0 && o <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("ratios must lie in [0, 1], got ", o));
    }
  }
  const std::string& k = dataset.kind;
  if (k != "sin" && k != "log" && k != "tlns" && k != "csv") {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown dataset '", k, "' (expected sin, log, tlns or csv)"));
  }
  if (k == "csv" && dataset.path.empty()) {
    return absl::InvalidArgumentError("csv dataset needs a path");
  }
  if (k != "csv" && (dataset.slots < 1 || dataset.users < 1)) {
    return absl::InvalidArgumentError("slots and users must be positive");
  }
  if (schedule.kind == ScheduleSpec::Kind::kScripted &&
      schedule.script.empty()) {
    return absl::InvalidArgumentError("scripted schedule has no slots");
  }
  return absl::OkStatus();
}

std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  for (MechanismKind m : config.mechanisms) {
    for (double e : config.budgets) {
      for (int w : config.windows) {
        for (double o : config.ratios) {
          grid.push_back({grid.size(), m, e, w, o});
        }
      }
    }
  }
  return grid;
}

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view json_text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) {
      return absl::InvalidArgumentError("config must be a JSON object");
    }
    if (j.contains("dataset")) ParseDataset(j["dataset"], c.dataset);
    if (j.contains("mechanism")) {
      const json& m = j["mechanism"];
      std::vector<std::string> names;
      if (m.is_array()) {
        names = m.get<std::vector<std::string>>();
      } else {
        names.push_back(m.get<std::string>());
      }
      c.mechanisms.clear();
      for (const std::string& name : names) {
        absl::StatusOr<MechanismKind> k = ParseMechanism(name);
        if (!k.ok()) return k.status();
        c.mechanisms.push_back(*k);
      }
    }
    c.budgets = j.value("budgets", c.budgets);
    c.windows = j.value("windows", c.windows);
    c.ratios = j.value("ratios", c.ratios);
    c.budget_domain = j.value("budget_domain", c.budget_domain);
    c.window_domain = j.value("window_domain", c.window_domain);
    if (j.contains("schedule")) ParseSchedule(j["schedule"], c.schedule);
    c.repeats = j.value("repeats", c.repeats);
    c.seed = j.value("seed", c.seed);
    c.output = j.value("output", c.output);
    c.save_traces = j.value("save_traces", c.save_traces);
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad config: ", e.what()));
  }
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  return c;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string ConfigToJson(const ExperimentConfig& c) {
  ordered_json j;
  ordered_json d;
  d["kind"] = c.dataset.kind;
  if (c.dataset.kind == "csv") {
    d["path"] = c.dataset.path;
    d["slot_width"] = c.dataset.slot_width;
  } else {
    d["slots"] = c.dataset.slots;
    d["users"] = c.dataset.users;
  }
  j["dataset"] = d;
  std::vector<std::string> names;
  for (MechanismKind m : c.mechanisms) names.emplace_back(MechanismName(m));
  j["mechanism"] = names;
  j["budgets"] = c.budgets;
  j["windows"] = c.windows;
  j["ratios"] = c.ratios;
  j["budget_domain"] = c.budget_domain;
  j["window_domain"] = c.window_domain;
  j["schedule"] = {{"kind", ScheduleKindName(c.schedule.kind)},
                   {"period", c.schedule.period},
                   {"backward_window", c.schedule.backward_window},
                   {"backward_budget", c.schedule.backward_budget}};
  j["repeats"] = c.repeats;
  j["seed"] = c.seed;
  j["output"] = c.output;
  return j.dump();
}

}  // namespace pwevent
