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

#ifndef AIRCOMP_VERIFY_HPP_
#define AIRCOMP_VERIFY_HPP_

// Built-in oracle checks run by `aircomp verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace aircomp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 1;
};

// Exhaustive and randomized exact-sum check of the codec.
CheckResult VerifyExactSum(const VerifyOptions& options);
// Greedy selection against exhaustive subset search on multipath gains.
CheckResult VerifyGreedyOptimality(const VerifyOptions& options);
// Monte Carlo MSE of the LMMSE detector against the closed form, and
// against a grid of perturbed linear detectors.
CheckResult VerifyLmmse(const VerifyOptions& options);
// Exact and sampled bit statistics of uniform lattice codewords.
CheckResult VerifyBernoulli(const VerifyOptions& options);

// Expected z-score of the MSE gap between lambda and 1.1 lambda over
// `trials` paired samples. Below ~4 the comparison is dominated by Monte
// Carlo noise, so the LMMSE check only samples tuples above that level.
double LambdaPerturbationZ(double scaling, int active, int devices, double noise_power,
                           std::int64_t trials);

std::vector<CheckResult> RunVerification(const VerifyOptions& options);

}  // namespace aircomp

#endif  // AIRCOMP_VERIFY_HPP_
