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

#include "pwevent/evaluation/metrics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"

namespace pwevent {
namespace {

double KlTerm(double a, double v) {
  if (a <= 0.0 || v <= 0.0) return 0.0;
  return a * std::log(a / v);
}

absl::Status CheckTrace(const RunTrace& trace) {
  if (trace.publications.empty()) {
    return absl::InvalidArgumentError("trace has no slots");
  }
  if (trace.true_counts.size() != trace.publications.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "trace has ", trace.true_counts.size(), " true counts but ",
        trace.publications.size(), " releases"));
  }
  for (size_t t = 0; t < trace.true_counts.size(); ++t) {
    const size_t d = trace.true_counts[t].dimension();
    if (d == 0 || trace.publications[t].release.dimension() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("slot ", t + 1, " release and truth differ in size"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

double SlotSquaredError(const CountVector& release, const CountVector& truth) {
  double s = 0.0;
  for (size_t j = 0; j < truth.dimension(); ++j) {
    const double e = release[j] - truth[j];
    s += e * e;
  }
  return s / static_cast<double>(truth.dimension());
}

double SlotJensenShannon(const CountVector& release, const CountVector& truth,
                         bool normalize) {
  const size_t d = truth.dimension();
  std::vector<double> r(d), c(d);
  double rs = 0.0, cs = 0.0;
  for (size_t j = 0; j < d; ++j) {
    r[j] = std::max(release[j], 0.0);
    c[j] = truth[j];
    rs += r[j];
    cs += c[j];
  }
  if (normalize) {
    for (size_t j = 0; j < d; ++j) {
      if (rs > 0.0) r[j] /= rs;
      if (cs > 0.0) c[j] /= cs;
    }
  }
  double div = 0.0;
  for (size_t j = 0; j < d; ++j) {
    const double v = 0.5 * (r[j] + c[j]);
    div += KlTerm(r[j], v) + KlTerm(c[j], v);
  }
  return 0.5 * div;
}

absl::StatusOr<double> Amre(const RunTrace& trace) {
  if (absl::Status s = CheckTrace(trace); !s.ok()) return s;
  double total = 0.0;
  for (size_t t = 0; t < trace.publications.size(); ++t) {
    total +=
        SlotSquaredError(trace.publications[t].release, trace.true_counts[t]);
  }
  return total / static_cast<double>(trace.publications.size());
}

absl::StatusOr<double> Ajsd(const RunTrace& trace, bool normalize) {
  if (absl::Status s = CheckTrace(trace); !s.ok()) return s;
  double total = 0.0;
  for (size_t t = 0; t < trace.publications.size(); ++t) {
    total += SlotJensenShannon(trace.publications[t].release,
                               trace.true_counts[t], normalize);
  }
  return total / static_cast<double>(trace.publications.size());
}

}  // namespace pwevent
