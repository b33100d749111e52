// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AIRCOMP_TRANSCEIVER_HPP_
#define AIRCOMP_TRANSCEIVER_HPP_

// Truncated channel inversion, bit-plane power allocation and per-subcarrier
// detection of r_l = sum_k x_{k,l}.

#include <complex>
#include <span>
#include <vector>

#include "aircomp/channel.hpp"

namespace aircomp {

// Geometric split of a device budget over b bit-planes: P_l / P_{l-1} = varpi,
// sum_l P_l = p_max. varpi = 1 is the uniform split. Throws ContractViolation
// for p_max <= 0, bits < 1 or varpi < 1.
std::vector<double> AllocatePower(double p_max, int bits, double varpi);

// Per-device budgets P_{k,l} for one subcarrier plus the device totals.
class PowerBudget {
 public:
  // Every device gets AllocatePower(p_max, L, varpi).
  PowerBudget(int devices, int subcarriers, double p_max, double varpi);

  int devices() const { return devices_; }
  int subcarriers() const { return subcarriers_; }
  double varpi() const { return varpi_; }
  double total(int k) const { return totals_.at(k); }

  double& operator()(int k, int l) { return values_[k * subcarriers_ + l]; }
  double operator()(int k, int l) const { return values_[k * subcarriers_ + l]; }

 private:
  int devices_;
  int subcarriers_;
  double varpi_;
  std::vector<double> totals_;
  std::vector<double> values_;
};

// Active set, scaling and LMMSE coefficients of one subcarrier.
struct SubcarrierPlan {
  std::vector<int> active;  // ascending device indices
  double scaling = 0.0;     // p_l
  double noise_power = 1.0; // sigma_l^2
  int devices = 0;          // K
  double lambda = 0.0;
  double mu = 0.0;

  int active_count() const { return static_cast<int>(active.size()); }
  bool IsActive(int k) const;
};

// Fills lambda = sqrt(p)|K_l| / (2 p |K_l| + sigma^2) and mu = K / 2.
SubcarrierPlan MakePlan(std::vector<int> active, double scaling,
                        double noise_power, int devices);

// rho = sqrt(p) conj(h_est) / |h_est|^2 for active devices, 0 otherwise.
// Throws ContractViolation when an active device has a zero gain.
Complex Preprocess(Complex h_est, double scaling, bool active);

// True iff p_l / |h_{k,l}|^2 <= P_{k,l} for every active k on subcarrier l.
// Equality counts as feasible; a relative slack of 1e-12 absorbs rounding in
// p_l = |h|^2 P.
bool TransmitPowerCheck(const SubcarrierPlan& plan, const GainMatrix& h_est,
                        const PowerBudget& budgets, int subcarrier);

// r_hat = lambda Re{y} + K/2. Real valued unless `round_output` is set.
double LmmseDetect(Complex y, const SubcarrierPlan& plan, bool round_output = false);

// Nearest point of the lattice {2 sqrt(p) r - sqrt(p)|K_l| : r = 0..|K_l|}
// with ties to the lower index, plus (K - |K_l|)/2 for truncated devices.
double MlDetect(Complex y, const SubcarrierPlan& plan);

// Minimum MSE of the LMMSE detector:
//   e = (2 p n (K - n) + K sigma^2) / (8 p n + 4 sigma^2),  n = |K_l|.
double MseClosedForm(double scaling, int active_count, int devices, double noise_power);

}  // namespace aircomp

#endif  // AIRCOMP_TRANSCEIVER_HPP_
