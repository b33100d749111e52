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

#include "aircomp/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aircomp/errors.hpp"
#include "aircomp/transceiver.hpp"

namespace aircomp {

void SelectionInstance::Validate() const {
  if (effective_gains.empty()) throw ContractViolation("selection needs at least one device");
  if (!(noise_power > 0.0)) throw ContractViolation("noise power must be positive");
  for (double g : effective_gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ContractViolation("effective gains must be finite and >= 0");
    }
  }
}

double OptimalScaling(std::span<const int> active, const SelectionInstance& instance) {
  if (active.empty()) {
    throw ContractViolation("optimal scaling is undefined for an empty active set");
  }
  double p = std::numeric_limits<double>::infinity();
  for (int k : active) p = std::min(p, instance.effective_gains.at(k));
  return p;
}

Selection GreedySelect(const SelectionInstance& instance, GreedyOptions options) {
  instance.Validate();
  const int K = instance.devices();
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.effective_gains[a] > instance.effective_gains[b];
  });

  double best = std::numeric_limits<double>::infinity();
  int best_len = 0;
  double best_p = 0.0;
  for (int n = 1; n <= K; ++n) {
    // The newest member has the smallest gain of the prefix.
    const double p = instance.effective_gains[order[n - 1]];
    const double e = MseClosedForm(p, n, K, instance.noise_power);
    if (e < best) {
      best = e;
      best_len = n;
      best_p = p;
    }
  }

  Selection out;
  const double prior = MseClosedForm(0.0, 0, K, instance.noise_power);
  if (options.allow_empty && !(best < prior)) {
    out.mse = prior;
    return out;
  }
  out.active.assign(order.begin(), order.begin() + best_len);
  std::sort(out.active.begin(), out.active.end());
  out.scaling = best_p;
  out.mse = best;
  return out;
}

Selection BruteForceSelect(const SelectionInstance& instance) {
  instance.Validate();
  const int K = instance.devices();
  if (K > kBruteForceMaxDevices) {
    throw ContractViolation("brute-force selection is limited to " +
                            std::to_string(kBruteForceMaxDevices) + " devices");
  }
  Selection best;
  best.mse = std::numeric_limits<double>::infinity();
  std::vector<int> set;
  for (std::uint32_t mask = 1; mask < (1U << K); ++mask) {
    set.clear();
    for (int k = 0; k < K; ++k) {
      if (mask & (1U << k)) set.push_back(k);
    }
    const double p = OptimalScaling(set, instance);
    const double e = MseClosedForm(p, static_cast<int>(set.size()), K, instance.noise_power);
    const bool better =
        e < best.mse ||
        (e == best.mse && (set.size() < best.active.size() ||
                           (set.size() == best.active.size() && set < best.active)));
    if (better) {
      best.active = set;
      best.scaling = p;
      best.mse = e;
    }
  }
  return best;
}

}  // namespace aircomp
