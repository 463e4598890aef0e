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

// Closed-form upper bounds on the average per-slot error of the four
// personalized mechanisms. The evaluators never clamp or repair inputs;
// when an assumption behind a bound does not hold the value is still
// returned, with assumptions_met cleared.

#ifndef PWEVENT_EVALUATION_BOUNDS_H_
#define PWEVENT_EVALUATION_BOUNDS_H_

#include <cstdint>
#include <string>

namespace pwevent {

// Sum of 1/k^2 for k = 1..floor(x); 0 for x < 1.
double HarmonicSquare(double x);

struct BoundResult {
  double value = 0.0;
  bool assumptions_met = true;
  std::string note;
};

struct FixedBoundInputs {
  // min and max over users of E_i / w_i.
  double eps_l = 0.0;
  double eps_r = 0.0;
  int64_t n = 0;
  // Users holding the largest per-slot budget.
  int64_t n_a = 0;
  int d = 1;
  // Smallest window.
  int w_l = 1;
  // At most this many non-null releases in any w_l window.
  int s = 1;
  // Average skipped releases before each release (absorption).
  double alpha = 0.0;
  // Smallest / largest publication budget at slots w_l and alpha + 1.
  double eps_l_tilde = 0.0;
  double eps_r_tilde = 0.0;
  // Measured mean error of a nullified release.
  double err_nlf = 0.0;
};

// (n - n_A)(n - n_A + 1/4), the sampling-error ceiling.
double SamplingCeiling(int64_t n, int64_t n_top);

BoundResult BoundPbd(const FixedBoundInputs& in);

enum class PbaBranch { kAuto, kWithinWindow, kBeyondWindow };
// kWithinWindow / kBeyondWindow force one side of the alpha <= w_L split.
BoundResult BoundPba(const FixedBoundInputs& in,
                     PbaBranch branch = PbaBranch::kAuto);

struct DynamicBoundInputs {
  double eps_bl = 0.0;
  double eps_br = 0.0;
  double eps_fll = 0.0;
  double eps_flr = 0.0;
  double gamma_l = 0.0;
  double gamma_r = 0.0;
  // Non-null releases per period.
  int s_hat = 1;
  int64_t n = 0;
  int64_t n_b = 0;
  int d = 1;
  double rho_sk = 0.0;
  double rho_nu = 0.0;
  double lambda_l = 0.0;
  double lambda_r = 0.0;
  double lambda_lr = 0.0;
  double lambda_rl = 0.0;
  double err_nlf = 0.0;
};

// kStated uses 4^(s - gamma + 1) + 3 gamma - 4; kExpanded carries the
// expanded sum 4^(s - gamma + 2) + 3 gamma - 16.
enum class DpbdVariant { kStated, kExpanded };

BoundResult BoundDpbd(const DynamicBoundInputs& in,
                      DpbdVariant variant = DpbdVariant::kStated);

// Publication-phase term of the absorption bound, three-way dispatch.
double DpbaPublicationError(const DynamicBoundInputs& in);
BoundResult BoundDpba(const DynamicBoundInputs& in);

}  // namespace pwevent

#endif  // PWEVENT_EVALUATION_BOUNDS_H_
