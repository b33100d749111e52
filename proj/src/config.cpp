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

#include "aircomp/config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "aircomp/errors.hpp"

namespace aircomp {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseDouble(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ParseError(line, fmt::format("'{}' expects a number, got '{}'", key, v));
  }
  return out;
}

template <typename Int>
Int ParseInt(std::string_view v, int line, std::string_view key) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("'{}' expects an integer, got '{}'", key, v));
  }
  return out;
}

bool ParseBool(std::string_view v, int line, std::string_view key) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError(line, fmt::format("'{}' expects true or false, got '{}'", key, v));
}

template <typename Enum>
Enum ParseEnum(std::string_view v, int line, std::string_view key,
               const std::map<std::string_view, Enum>& names) {
  const auto it = names.find(v);
  if (it == names.end()) {
    std::string allowed;
    for (const auto& [name, _] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    throw ParseError(line, fmt::format("'{}' must be one of {{{}}}, got '{}'", key, allowed, v));
  }
  return it->second;
}

std::vector<double> ParseSnrGrid(std::string_view v, int line) {
  std::vector<double> grid;
  if (v.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto pos = v.find(':', start);
      parts.push_back(ParseDouble(Trim(v.substr(start, pos - start)), line, "snr_db"));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
      throw ParseError(line, "snr_db range must be start:step:stop with step > 0");
    }
    const auto count = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    for (long i = 0; i <= count; ++i) grid.push_back(parts[0] + i * parts[1]);
    return grid;
  }
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto pos = v.find(',', start);
    const auto item = Trim(v.substr(start, pos == std::string_view::npos ? v.npos : pos - start));
    if (!item.empty()) grid.push_back(ParseDouble(item, line, "snr_db"));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (grid.empty()) throw ParseError(line, "snr_db must not be empty");
  return grid;
}

const std::map<std::string_view, Scheme> kSchemes = {
    {"proposed", Scheme::kProposed}, {"analog", Scheme::kAnalog}, {"binary_ml", Scheme::kBinaryMl}};
const std::map<std::string_view, SourceKind> kSources = {
    {"uniform", SourceKind::kUniform}, {"gaussian", SourceKind::kGaussian}};
const std::map<std::string_view, PowerMode> kPowerModes = {
    {"uniform", PowerMode::kUniform}, {"geometric", PowerMode::kGeometric}};
const std::map<std::string_view, Detector> kDetectors = {
    {"lmmse", Detector::kLmmse}, {"ml", Detector::kMl}};
const std::map<std::string_view, TapProfile> kProfiles = {
    {"uniform", TapProfile::kUniform}, {"exponential", TapProfile::kExponential}};

template <typename Enum>
std::string_view EnumName(Enum e, const std::map<std::string_view, Enum>& names) {
  for (const auto& [name, value] : names) {
    if (value == e) return name;
  }
  return "?";
}

// Accumulates one section and applies the derived defaults when closed.
class SectionBuilder {
 public:
  SectionBuilder(std::string name, int line) : name_(std::move(name)), line_(line) {}

  void Set(std::string_view key, std::string_view v, int line) {
    if (!seen_.insert(std::string(key)).second) {
      throw ParseError(line, fmt::format("duplicate key '{}' in [{}]", key, name_));
    }
    auto& c = config_;
    if (key == "K") c.devices = ParseInt<int>(v, line, key);
    else if (key == "b") c.bits = ParseInt<int>(v, line, key);
    else if (key == "L") c.subcarriers = ParseInt<int>(v, line, key);
    else if (key == "M") c.taps = ParseInt<int>(v, line, key);
    else if (key == "tap_profile") c.tap_profile = ParseEnum(v, line, key, kProfiles);
    else if (key == "tap_decay") c.tap_decay = ParseDouble(v, line, key);
    else if (key == "source") c.source = ParseEnum(v, line, key, kSources);
    else if (key == "s_max") c.s_max = ParseDouble(v, line, key);
    else if (key == "source_std") c.source_std = ParseDouble(v, line, key);
    else if (key == "scheme") c.scheme = ParseEnum(v, line, key, kSchemes);
    else if (key == "power_mode") c.power_mode = ParseEnum(v, line, key, kPowerModes);
    else if (key == "varpi") {
      c.varpi = ParseDouble(v, line, key);
      if (!(c.varpi >= 1.0)) throw ParseError(line, "varpi must be >= 1");
    }
    else if (key == "detector") c.detector = ParseEnum(v, line, key, kDetectors);
    else if (key == "round_lmmse") c.round_lmmse = ParseBool(v, line, key);
    else if (key == "reallocate") c.reallocate = ParseBool(v, line, key);
    else if (key == "allow_empty") c.allow_empty = ParseBool(v, line, key);
    else if (key == "snr_db") c.snr_db = ParseSnrGrid(v, line);
    else if (key == "trials") c.trials = ParseInt<std::int64_t>(v, line, key);
    else if (key == "csi_error") c.csi_error_radius = ParseDouble(v, line, key);
    else if (key == "p_max") c.p_max = ParseDouble(v, line, key);
    else if (key == "seed") c.seed = ParseInt<std::uint64_t>(v, line, key);
    else if (key == "mimo_tx") Mimo().tx_antennas = ParseInt<int>(v, line, key);
    else if (key == "mimo_rx") Mimo().rx_antennas = ParseInt<int>(v, line, key);
    else if (key == "analog_threshold") c.analog_threshold = ParseDouble(v, line, key);
    else throw ParseError(line, fmt::format("unknown key '{}'", key));
  }

  Experiment Finish() {
    auto& c = config_;
    if (!seen_.contains("L") && c.scheme != Scheme::kAnalog) c.subcarriers = c.bits;
    if (!seen_.contains("source_std")) c.source_std = c.s_max / 3.0;
    if (c.power_mode == PowerMode::kGeometric && !seen_.contains("varpi")) c.varpi = 2.0;
    if (!seen_.contains("power_mode") && c.varpi > 1.0) c.power_mode = PowerMode::kGeometric;
    try {
      c.Validate();
    } catch (const ContractViolation& e) {
      throw ParseError(line_, fmt::format("[{}]: {}", name_, e.what()));
    }
    return Experiment{name_, c};
  }

 private:
  MimoParams& Mimo() {
    if (!config_.mimo) config_.mimo = MimoParams{};
    return *config_.mimo;
  }

  std::string name_;
  int line_;
  SimConfig config_;
  std::set<std::string> seen_;
};

}  // namespace

ExperimentSpec ParseConfig(std::string_view text) {
  ExperimentSpec spec;
  std::optional<SectionBuilder> section;
  std::set<std::string> names;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const std::string name(Trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw ParseError(line_no, "empty experiment name");
      if (!names.insert(name).second) {
        throw ParseError(line_no, fmt::format("duplicate experiment name '{}'", name));
      }
      if (section) spec.experiments.push_back(section->Finish());
      section.emplace(name, line_no);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = Trim(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (value.empty()) throw ParseError(line_no, fmt::format("missing value for '{}'", key));

    if (section) {
      section->Set(key, value, line_no);
    } else if (key == "output") {
      spec.output = std::string(value);
    } else if (key == "verbosity") {
      spec.verbosity = ParseInt<int>(value, line_no, key);
    } else {
      throw ParseError(line_no, fmt::format("unknown global key '{}' (experiment keys belong "
                                            "in a [section])", key));
    }
  }
  if (section) spec.experiments.push_back(section->Finish());
  if (spec.experiments.empty()) spec.experiments.push_back(SectionBuilder("default", 0).Finish());
  return spec;
}

ExperimentSpec LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string SerializeConfig(const ExperimentSpec& spec) {
  std::string out;
  auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  if (!spec.output.empty()) line("output", spec.output);
  if (spec.verbosity != 0) line("verbosity", spec.verbosity);
  for (const auto& exp : spec.experiments) {
    const auto& c = exp.config;
    out += fmt::format("\n[{}]\n", exp.name);
    line("scheme", EnumName(c.scheme, kSchemes));
    line("K", c.devices);
    line("b", c.bits);
    line("L", c.subcarriers);
    line("M", c.taps);
    line("tap_profile", EnumName(c.tap_profile, kProfiles));
    line("tap_decay", c.tap_decay);
    line("source", EnumName(c.source, kSources));
    line("s_max", c.s_max);
    line("source_std", c.source_std);
    line("power_mode", EnumName(c.power_mode, kPowerModes));
    line("varpi", c.varpi);
    line("detector", EnumName(c.detector, kDetectors));
    line("round_lmmse", c.round_lmmse);
    line("reallocate", c.reallocate);
    line("allow_empty", c.allow_empty);
    line("snr_db", fmt::format("{}", fmt::join(c.snr_db, ", ")));
    line("trials", c.trials);
    line("csi_error", c.csi_error_radius);
    line("p_max", c.p_max);
    line("seed", c.seed);
    if (c.mimo) {
      line("mimo_tx", c.mimo->tx_antennas);
      line("mimo_rx", c.mimo->rx_antennas);
    }
    line("analog_threshold", c.analog_threshold);
  }
  return out;
}

}  // namespace aircomp
