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

#include "aircomp/report.hpp"

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "aircomp/config.hpp"

namespace aircomp {
namespace {

SweepResult SmallSweep(const std::string& name) {
  SimConfig c;
  c.trials = 50;
  c.snr_db = {-10, 10};
  return Sweep(c, name);
}

TEST(Csv, HeaderAndRows) {
  const std::vector<SweepResult> results = {SmallSweep("u"), SmallSweep("v")};
  std::ostringstream os;
  WriteCsv(os, results);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "scheme,snr_db,nmse,stderr,mean_active,mean_p,trials,seed");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    EXPECT_TRUE(line.rfind(rows <= 2 ? "u," : "v,", 0) == 0) << line;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Metadata, ParsesAndEmbedsConfig) {
  const std::vector<SweepResult> results = {SmallSweep("u")};
  std::ostringstream os;
  WriteMetadata(os, results);
  const auto doc = nlohmann::json::parse(os.str());
  EXPECT_EQ(doc["format"], "aircomp-sweep/1");
  ASSERT_EQ(doc["experiments"].size(), 1u);
  const auto& exp = doc["experiments"][0];
  EXPECT_EQ(exp["config"]["K"], 20);
  EXPECT_EQ(exp["points"].size(), 2u);
  EXPECT_EQ(exp["points"][0]["mean_active_per_subcarrier"].size(), 8u);
  const auto reparsed = ParseConfig(exp["config_text"].get<std::string>());
  EXPECT_EQ(reparsed.experiments[0].config, results[0].config);
}

TEST(Trace, ShowsEveryStage) {
  SimConfig c;
  c.devices = 3;
  c.bits = 4;
  c.subcarriers = 4;
  const auto text = TraceTrial(c, 10.0);
  for (const char* needle : {"zeta=", "codeword", "y_l", "r_hat_l", "s_hat", "s_quant"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
  EXPECT_EQ(text, TraceTrial(c, 10.0));
}

}  // namespace
}  // namespace aircomp
