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

#ifndef PWEVENT_HARNESS_TRACE_IO_H_
#define PWEVENT_HARNESS_TRACE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "pwevent/evaluation/run_trace.h"

namespace pwevent {

// JSON form of a trace: per-slot true counts, releases, decisions and the
// two spend columns, plus the requirements the audit checks against.
std::string TraceToJson(const RunTrace& trace);
absl::StatusOr<RunTrace> TraceFromJson(std::string_view json_text);

absl::Status SaveTrace(const RunTrace& trace, const std::string& path);
absl::StatusOr<RunTrace> LoadTrace(const std::string& path);

}  // namespace pwevent

#endif  // PWEVENT_HARNESS_TRACE_IO_H_
