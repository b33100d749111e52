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

#ifndef AIRCOMP_CONFIG_HPP_
#define AIRCOMP_CONFIG_HPP_

// Experiment files: flat, sectioned key-value text.
//
//   # comment
//   output = results.csv        (optional global keys: output, verbosity)
//
//   [proposed-G]
//   scheme = proposed
//   power_mode = geometric
//   varpi = 2
//   snr_db = -10:5:20           (start:step:stop, or a comma list)
//
// Each section is one experiment named by its header. A file without
// sections yields a single experiment named "default". Unset keys take the
// SimConfig defaults (K = 20, b = 8, L = 8, ...); L follows b when only b is
// given.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aircomp/simulator.hpp"

namespace aircomp {

struct Experiment {
  std::string name;
  SimConfig config;

  friend bool operator==(const Experiment&, const Experiment&) = default;
};

struct ExperimentSpec {
  std::vector<Experiment> experiments;
  std::string output;
  int verbosity = 0;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

// Throws ParseError (with a 1-based line number where possible).
ExperimentSpec ParseConfig(std::string_view text);

// Throws ParseError when the file cannot be read.
ExperimentSpec LoadConfig(const std::filesystem::path& path);

// Writes every field explicitly; ParseConfig(SerializeConfig(s)) == s.
std::string SerializeConfig(const ExperimentSpec& spec);

}  // namespace aircomp

#endif  // AIRCOMP_CONFIG_HPP_
