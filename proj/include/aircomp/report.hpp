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

#ifndef AIRCOMP_REPORT_HPP_
#define AIRCOMP_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "aircomp/simulator.hpp"

namespace aircomp {

inline constexpr const char* kCsvHeader =
    "scheme,snr_db,nmse,stderr,mean_active,mean_p,trials,seed";

// One row per (experiment, SNR point). The scheme column carries the
// experiment name. Runtime is deliberately absent so identical runs produce
// identical bytes.
void WriteCsv(std::ostream& os, std::span<const SweepResult> results);

// JSON document with the full config of every experiment, the NMSE and SNR
// definitions, and per-subcarrier means.
void WriteMetadata(std::ostream& os, std::span<const SweepResult> results);

// Human-readable trace of one trial at the given SNR: sources, lattice
// values, codewords, per-subcarrier plans, y_l, r_l, r_hat_l and the decoded
// sum.
std::string TraceTrial(const SimConfig& config, double snr_db, std::uint64_t trial = 0);

}  // namespace aircomp

#endif  // AIRCOMP_REPORT_HPP_
