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

#include "pwevent/evaluation/bounds.h"

#include <algorithm>
#include <cmath>

namespace pwevent {
namespace {

double Sq(double x) { return x * x; }

void Require(BoundResult& r, bool ok, const char* what) {
  if (ok) return;
  r.assumptions_met = false;
  if (!r.note.empty()) r.note += "; ";
  r.note += what;
}

// Calculation-phase term shared by the fixed bounds.
double FixedDcTerm(const FixedBoundInputs& in, double z) {
  const double d2 = Sq(static_cast<double>(in.d));
  return std::min(8.0 / (d2 * Sq(in.eps_l)), z + 8.0 / (d2 * Sq(in.eps_r)));
}

double DynamicDcTerm(const DynamicBoundInputs& in, double z) {
  const double d2 = Sq(static_cast<double>(in.d));
  return std::min(2.0 / (d2 * Sq(std::min(in.eps_fll, in.eps_bl))),
                  z + 2.0 / (d2 * Sq(std::max(in.eps_flr, in.eps_br))));
}

void CheckFixed(BoundResult& r, const FixedBoundInputs& in) {
  Require(r, in.eps_l > 0.0 && in.eps_r >= in.eps_l, "need 0 < eps_L <= eps_R");
  Require(r, in.d >= 1, "need d >= 1");
  Require(r, in.n >= in.n_a && in.n_a >= 1, "need 1 <= n_A <= n");
}

}  // namespace

double HarmonicSquare(double x) {
  const int64_t k_max = static_cast<int64_t>(std::floor(x));
  double s = 0.0;
  for (int64_t k = k_max; k >= 1; --k) s += 1.0 / Sq(static_cast<double>(k));
  return s;
}

double SamplingCeiling(int64_t n, int64_t n_top) {
  const double m = static_cast<double>(n - n_top);
  return m * (m + 0.25);
}

BoundResult BoundPbd(const FixedBoundInputs& in) {
  BoundResult r;
  CheckFixed(r, in);
  Require(r, in.s >= 1 && in.s <= in.w_l, "need 1 <= s <= w_L");
  const double z = SamplingCeiling(in.n, in.n_a);
  const double s = static_cast<double>(in.s);
  const double growth = 32.0 * (std::pow(4.0, s) - 1.0) / (3.0 * s);
  r.value = FixedDcTerm(in, z) +
            std::min(growth / Sq(in.eps_l), z + growth / Sq(in.eps_r));
  return r;
}

BoundResult BoundPba(const FixedBoundInputs& in, PbaBranch branch) {
  BoundResult r;
  CheckFixed(r, in);
  Require(r, in.alpha >= 0.0, "need alpha >= 0");
  const double z = SamplingCeiling(in.n, in.n_a);
  const double a = in.alpha;
  const double wl = static_cast<double>(in.w_l);
  const bool within =
      branch == PbaBranch::kAuto ? a <= wl : branch == PbaBranch::kWithinWindow;
  double publish;
  if (within) {
    const double h = HarmonicSquare(a + 1.0);
    publish = std::min(2.0 / Sq(in.eps_l) * h,
                       (a + 1.0) * z + 2.0 / Sq(in.eps_r) * h);
  } else {
    Require(r, in.eps_l_tilde > 0.0 && in.eps_r_tilde > 0.0,
            "need positive window-end budgets");
    const double h = HarmonicSquare(wl);
    publish =
        std::min(2.0 / Sq(in.eps_l) * h, wl * z + 2.0 / Sq(in.eps_r) * h) +
        (a - wl + 1.0) *
            std::min(2.0 / Sq(in.eps_l_tilde), z + 2.0 / Sq(in.eps_r_tilde));
  }
  r.value = FixedDcTerm(in, z) + (publish + a * in.err_nlf) / (2.0 * a + 1.0);
  return r;
}

BoundResult BoundDpbd(const DynamicBoundInputs& in, DpbdVariant variant) {
  BoundResult r;
  Require(r,
          in.eps_bl > 0.0 && in.eps_br > 0.0 && in.eps_fll > 0.0 &&
              in.eps_flr > 0.0,
          "need positive budgets");
  Require(r, in.gamma_l <= in.gamma_r, "need gamma_L <= gamma_R");
  Require(r, in.s_hat >= 1, "need s_hat >= 1");
  const double z = SamplingCeiling(in.n, in.n_b);
  const double s = static_cast<double>(in.s_hat);
  const double shift = variant == DpbdVariant::kStated ? 1.0 : 2.0;
  const double offset = variant == DpbdVariant::kStated ? 4.0 : 16.0;
  auto growth = [&](double gamma) {
    return 2.0 * (std::pow(4.0, s - gamma + shift) + 3.0 * gamma - offset) /
           (3.0 * s);
  };
  r.value =
      DynamicDcTerm(in, z) + std::min(growth(in.gamma_r) / Sq(in.eps_bl),
                                      z + growth(in.gamma_l) / Sq(in.eps_br));
  return r;
}

double DpbaPublicationError(const DynamicBoundInputs& in) {
  const double z = SamplingCeiling(in.n, in.n_b);
  const double rho1 = in.rho_sk + 1.0;
  if (in.lambda_lr >= in.lambda_rl) {
    const double h = HarmonicSquare(rho1);
    return std::min(2.0 * h / Sq(in.eps_fll),
                    z * rho1 + 2.0 * h / Sq(in.eps_flr));
  }
  if (in.lambda_l < rho1 && rho1 <= in.lambda_r) {
    return std::min(2.0 / Sq(in.eps_fll) * HarmonicSquare(rho1),
                    z * rho1 + 2.0 * rho1 / Sq(in.eps_br));
  }
  const double nd = static_cast<double>(in.n);
  const double tail = in.rho_sk - in.lambda_r + 1.0;
  return std::min(2.0 / Sq(in.eps_fll) * HarmonicSquare(in.lambda_l),
                  z * in.lambda_l + 2.0 * in.lambda_l / Sq(in.eps_br)) +
         (in.lambda_r - in.lambda_l) *
             std::min(2.0 / Sq(in.eps_bl),
                      nd * (nd + 0.25) + 2.0 / Sq(in.eps_br)) +
         std::min(2.0 * tail / Sq(in.eps_bl),
                  tail * z + 2.0 / Sq(in.eps_flr) * HarmonicSquare(tail));
}

BoundResult BoundDpba(const DynamicBoundInputs& in) {
  BoundResult r;
  Require(r,
          in.eps_bl > 0.0 && in.eps_br > 0.0 && in.eps_fll > 0.0 &&
              in.eps_flr > 0.0,
          "need positive budgets");
  Require(r, in.lambda_l <= in.lambda_r, "need lambda_L <= lambda_R");
  Require(r, in.rho_sk >= 0.0 && in.rho_nu >= 0.0, "need rho >= 0");
  const double z = SamplingCeiling(in.n, in.n_b);
  r.value = DynamicDcTerm(in, z) +
            (DpbaPublicationError(in) + in.rho_nu * in.err_nlf) /
                (in.rho_sk + in.rho_nu + 1.0);
  return r;
}

}  // namespace pwevent
