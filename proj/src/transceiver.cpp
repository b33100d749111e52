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

#include "aircomp/transceiver.hpp"

#include <algorithm>
#include <cmath>

#include "aircomp/errors.hpp"

namespace aircomp {

std::vector<double> AllocatePower(double p_max, int bits, double varpi) {
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw ContractViolation("power budget must be positive and finite");
  }
  if (bits < 1) throw ContractViolation("need at least one bit-plane");
  if (!(varpi >= 1.0) || !std::isfinite(varpi)) {
    throw ContractViolation("geometric ratio varpi must be >= 1");
  }
  std::vector<double> budgets(bits);
  if (varpi == 1.0) {
    std::fill(budgets.begin(), budgets.end(), p_max / bits);
    return budgets;
  }
  // P_1 (varpi^b - 1) / (varpi - 1) = p_max.
  const double first = p_max * (varpi - 1.0) / (std::pow(varpi, bits) - 1.0);
  double level = first;
  for (int l = 0; l < bits; ++l) {
    budgets[l] = level;
    level *= varpi;
  }
  return budgets;
}

PowerBudget::PowerBudget(int devices, int subcarriers, double p_max, double varpi)
    : devices_(devices),
      subcarriers_(subcarriers),
      varpi_(varpi),
      totals_(devices, p_max) {
  if (devices < 1) throw ContractViolation("need at least one device");
  const auto split = AllocatePower(p_max, subcarriers, varpi);
  values_.reserve(static_cast<std::size_t>(devices) * subcarriers);
  for (int k = 0; k < devices; ++k) values_.insert(values_.end(), split.begin(), split.end());
}

bool SubcarrierPlan::IsActive(int k) const {
  return std::binary_search(active.begin(), active.end(), k);
}

SubcarrierPlan MakePlan(std::vector<int> active, double scaling,
                        double noise_power, int devices) {
  if (!(scaling >= 0.0)) throw ContractViolation("scaling factor must be >= 0");
  if (!(noise_power > 0.0)) throw ContractViolation("noise power must be positive");
  std::sort(active.begin(), active.end());
  if (!active.empty() && (active.front() < 0 || active.back() >= devices)) {
    throw ContractViolation("active device index out of range");
  }
  SubcarrierPlan plan;
  plan.active = std::move(active);
  plan.scaling = scaling;
  plan.noise_power = noise_power;
  plan.devices = devices;
  const double n = plan.active_count();
  plan.lambda = std::sqrt(scaling) * n / (2.0 * scaling * n + noise_power);
  plan.mu = devices / 2.0;
  return plan;
}

Complex Preprocess(Complex h_est, double scaling, bool active) {
  if (!active) return {0.0, 0.0};
  const double gain = std::norm(h_est);
  if (!(gain > 0.0)) {
    throw ContractViolation("cannot invert a zero channel gain for an active device");
  }
  return std::sqrt(scaling) * std::conj(h_est) / gain;
}

bool TransmitPowerCheck(const SubcarrierPlan& plan, const GainMatrix& h_est,
                        const PowerBudget& budgets, int subcarrier) {
  if (plan.scaling == 0.0) return true;
  for (int k : plan.active) {
    const double gain = std::norm(h_est(k, subcarrier));
    const double budget = budgets(k, subcarrier);
    if (plan.scaling > gain * budget * (1.0 + 1e-12)) return false;
  }
  return true;
}

double LmmseDetect(Complex y, const SubcarrierPlan& plan, bool round_output) {
  const double r = plan.lambda * y.real() + plan.mu;
  return round_output ? std::round(r) : r;
}

double MlDetect(Complex y, const SubcarrierPlan& plan) {
  const int n = plan.active_count();
  const double truncated_mean = (plan.devices - n) / 2.0;
  if (n == 0 || plan.scaling == 0.0) return truncated_mean;
  const double amp = std::sqrt(plan.scaling);
  const double re = y.real();
  auto point = [&](int r) { return 2.0 * amp * r - amp * n; };
  const int guess = static_cast<int>(
      std::clamp(std::floor((re + amp * n) / (2.0 * amp)), -1.0, n + 1.0));
  // Scan the neighbours in ascending order so exact midpoints keep the lower
  // index; the extra neighbour covers rounding in the floor() guess.
  int best = -1;
  double best_dist = 0.0;
  for (int r = guess - 1; r <= guess + 1; ++r) {
    const int c = std::clamp(r, 0, n);
    const double dist = std::abs(re - point(c));
    if (best < 0 || dist < best_dist) {
      best = c;
      best_dist = dist;
    }
  }
  return best + truncated_mean;
}

double MseClosedForm(double scaling, int active_count, int devices, double noise_power) {
  const double p = scaling;
  const double n = active_count;
  const double K = devices;
  const double s2 = noise_power;
  return (2.0 * p * n * (K - n) + K * s2) / (8.0 * p * n + 4.0 * s2);
}

}  // namespace aircomp
