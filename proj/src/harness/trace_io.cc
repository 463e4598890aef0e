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

#include "pwevent/harness/trace_io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace pwevent {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// JSON has no infinity; dis is +inf whenever no calculation budget existed.
ordered_json Finite(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

double FromFinite(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

Decision ParseDecision(const std::string& s) {
  for (Decision d : {Decision::kNonNull, Decision::kSkipped,
                     Decision::kNullified, Decision::kForced}) {
    if (DecisionName(d) == s) return d;
  }
  throw std::invalid_argument("unknown decision '" + s + "'");
}

}  // namespace

std::string TraceToJson(const RunTrace& trace) {
  ordered_json j;
  j["mechanism"] = trace.mechanism;
  if (!trace.metadata.empty()) j["metadata"] = json::parse(trace.metadata);
  const size_t n = trace.ledger.num_users();
  j["users"] = n;
  if (trace.is_dynamic()) {
    ordered_json slots = ordered_json::array();
    for (const auto& slot : trace.dynamic_requirements) {
      ordered_json row = ordered_json::array();
      for (const DynamicRequirement& r : slot) {
        row.push_back({r.backward_window, r.backward_budget, r.forward_window,
                       r.forward_budget});
      }
      slots.push_back(std::move(row));
    }
    j["dynamic_requirements"] = std::move(slots);
  } else {
    ordered_json reqs = ordered_json::array();
    for (const FixedRequirement& r : trace.fixed_requirements) {
      reqs.push_back({r.window, r.budget});
    }
    j["fixed_requirements"] = std::move(reqs);
  }
  ordered_json slots = ordered_json::array();
  for (size_t k = 0; k < trace.publications.size(); ++k) {
    const PublicationRecord& p = trace.publications[k];
    ordered_json s;
    s["slot"] = p.slot;
    if (k < trace.true_counts.size()) {
      s["true"] = trace.true_counts[k].values();
    }
    s["release"] = p.release.values();
    s["decision"] = DecisionName(p.decision);
    s["dis"] = Finite(p.dis);
    if (p.eps_opt) s["eps_opt"] = *p.eps_opt;
    if (p.err_opt) s["err_opt"] = *p.err_opt;
    std::vector<double> eps1(n);
    for (size_t u = 0; u < n; ++u) eps1[u] = trace.ledger.eps1(u)[k];
    s["eps1"] = std::move(eps1);
    s["eps2"] = p.eps2;
    slots.push_back(std::move(s));
  }
  j["slots"] = std::move(slots);
  return j.dump();
}

absl::StatusOr<RunTrace> TraceFromJson(std::string_view json_text) {
  RunTrace t;
  try {
    const json j = json::parse(json_text);
    t.mechanism = j.at("mechanism").get<std::string>();
    if (j.contains("metadata")) t.metadata = j["metadata"].dump();
    const size_t n = j.at("users").get<size_t>();
    if (j.contains("dynamic_requirements")) {
      for (const json& slot : j["dynamic_requirements"]) {
        std::vector<DynamicRequirement> row;
        for (const json& r : slot) {
          row.push_back({r.at(0).get<int>(), r.at(1).get<double>(),
                         r.at(2).get<int>(), r.at(3).get<double>()});
        }
        if (row.size() != n) {
          return absl::InvalidArgumentError("requirement row size mismatch");
        }
        t.dynamic_requirements.push_back(std::move(row));
      }
    } else {
      for (const json& r : j.at("fixed_requirements")) {
        t.fixed_requirements.push_back(
            {r.at(0).get<int>(), r.at(1).get<double>()});
      }
      if (t.fixed_requirements.size() != n) {
        return absl::InvalidArgumentError("requirement count mismatch");
      }
    }
    t.ledger = BudgetLedger(n);
    for (const json& s : j.at("slots")) {
      PublicationRecord p;
      p.slot = s.at("slot").get<int64_t>();
      p.release = CountVector(s.at("release").get<std::vector<double>>());
      p.decision = ParseDecision(s.at("decision").get<std::string>());
      p.dis = FromFinite(s.at("dis"));
      if (s.contains("eps_opt")) p.eps_opt = s["eps_opt"].get<double>();
      if (s.contains("err_opt")) p.err_opt = s["err_opt"].get<double>();
      p.eps2 = s.at("eps2").get<std::vector<double>>();
      const auto eps1 = s.at("eps1").get<std::vector<double>>();
      if (eps1.size() != n || p.eps2.size() != n) {
        return absl::InvalidArgumentError(
            absl::StrCat("slot ", p.slot, " has the wrong number of users"));
      }
      if (absl::Status st = t.ledger.Append(eps1, p.eps2); !st.ok()) {
        return st;
      }
      if (s.contains("true")) {
        t.true_counts.emplace_back(s["true"].get<std::vector<double>>());
      }
      t.publications.push_back(std::move(p));
    }
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad trace: ", e.what()));
  }
  if (t.is_dynamic() &&
      t.dynamic_requirements.size() != t.publications.size()) {
    return absl::InvalidArgumentError("one requirement row per slot expected");
  }
  return t;
}

absl::Status SaveTrace(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path);
  out << TraceToJson(trace) << "\n";
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<RunTrace> LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return TraceFromJson(buf.str());
}

}  // namespace pwevent
