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

#ifndef AIRCOMP_SELECTION_HPP_
#define AIRCOMP_SELECTION_HPP_

#include <span>
#include <vector>

namespace aircomp {

// One subcarrier's device-selection problem: minimize the LMMSE error over
// the active set, with p_l capped by every active device's |h|^2 P product.
struct SelectionInstance {
  std::vector<double> effective_gains;  // |h_{k,l}|^2 P_{k,l}, one per device
  double noise_power = 1.0;

  int devices() const { return static_cast<int>(effective_gains.size()); }
  void Validate() const;
};

struct Selection {
  std::vector<int> active;  // ascending device indices
  double scaling = 0.0;
  double mse = 0.0;
};

// Largest feasible p_l for a fixed set: min of the effective gains.
double OptimalScaling(std::span<const int> active, const SelectionInstance& instance);

struct GreedyOptions {
  // Return the empty set (p = 0, e = K/4) when no prefix beats the prior.
  bool allow_empty = false;
};

// Sorts devices by descending effective gain (ties by ascending index) and
// keeps the best prefix. O(K log K).
Selection GreedySelect(const SelectionInstance& instance, GreedyOptions options = {});

inline constexpr int kBruteForceMaxDevices = 20;

// Exhaustive search over all non-empty subsets; ties go to the smaller set,
// then to the lexicographically smaller index list. Throws
// ContractViolation above kBruteForceMaxDevices.
Selection BruteForceSelect(const SelectionInstance& instance);

}  // namespace aircomp

#endif  // AIRCOMP_SELECTION_HPP_
