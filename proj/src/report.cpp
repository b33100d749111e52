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

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <json.hpp>
#include <ostream>

#include "aircomp/config.hpp"

namespace aircomp {

void WriteCsv(std::ostream& os, std::span<const SweepResult> results) {
  os << kCsvHeader << "\n";
  for (const auto& r : results) {
    for (const auto& p : r.points) {
      os << fmt::format("{},{},{},{},{},{},{},{}\n", r.name, p.snr_db, p.nmse, p.std_error,
                        p.mean_active, p.mean_scaling, p.trials, r.config.seed);
    }
  }
}

void WriteMetadata(std::ostream& os, std::span<const SweepResult> results) {
  using nlohmann::json;
  json doc;
  doc["format"] = "aircomp-sweep/1";
  doc["nmse"] = "sum over trials of (s_hat - s_true)^2 divided by sum of s_true^2";
  doc["snr"] = "P_max / (sigma^2 L), linear; snr_db = 10 log10(snr)";
  doc["csv_columns"] = kCsvHeader;
  json experiments = json::array();
  for (const auto& r : results) {
    const auto& c = r.config;
    // Reuse the config serializer so the metadata and config files agree.
    ExperimentSpec single;
    single.experiments.push_back(Experiment{r.name, c});
    json exp;
    exp["name"] = r.name;
    exp["scheme"] = SchemeName(c.scheme);
    exp["config_text"] = SerializeConfig(single);
    exp["config"] = {
        {"K", c.devices}, {"b", c.bits}, {"L", c.subcarriers}, {"M", c.taps},
        {"source", c.source == SourceKind::kUniform ? "uniform" : "gaussian"},
        {"s_max", c.s_max}, {"source_std", c.source_std},
        {"varpi", c.EffectiveVarpi()},
        {"detector", c.detector == Detector::kLmmse ? "lmmse" : "ml"},
        {"round_lmmse", c.round_lmmse}, {"reallocate", c.reallocate},
        {"allow_empty", c.allow_empty}, {"snr_db", c.snr_db}, {"trials", c.trials},
        {"csi_error", c.csi_error_radius}, {"p_max", c.p_max}, {"seed", c.seed},
        {"analog_threshold", c.analog_threshold}};
    if (c.mimo) {
      exp["config"]["mimo"] = {{"tx", c.mimo->tx_antennas}, {"rx", c.mimo->rx_antennas}};
    }
    json points = json::array();
    for (const auto& p : r.points) {
      points.push_back({{"snr_db", p.snr_db},
                        {"noise_power", p.noise_power},
                        {"nmse", p.nmse},
                        {"stderr", p.std_error},
                        {"quantization_nmse", p.quantization_nmse},
                        {"mean_active_per_subcarrier", p.mean_active_per_subcarrier},
                        {"mean_p_per_subcarrier", p.mean_scaling_per_subcarrier}});
    }
    exp["points"] = std::move(points);
    experiments.push_back(std::move(exp));
  }
  doc["experiments"] = std::move(experiments);
  os << doc.dump(2) << "\n";
}

std::string TraceTrial(const SimConfig& config, double snr_db, std::uint64_t trial) {
  const TrialRunner runner(config);
  const double noise = config.NoisePowerForSnr(snr_db);
  const auto net = runner.DrawRealization(noise, trial);
  auto streams = TrialStreams::ForTrial(config.seed, trial);
  const auto rec = runner.Run(net, streams);

  std::string out;
  out += fmt::format("scheme {}  K={} b={} L={}  snr={} dB  sigma^2={:.6g}  seed={}\n",
                     SchemeName(config.scheme), config.devices, config.bits,
                     config.subcarriers, snr_db, noise, config.seed);
  if (config.scheme != Scheme::kAnalog) {
    out += fmt::format("zeta={:.6g}  varpi={}\n", runner.quantizer().zeta(),
                       config.EffectiveVarpi());
  }
  out += "\ndevice  source        lattice  codeword(MSB..LSB)\n";
  for (int k = 0; k < config.devices; ++k) {
    std::string cw = "-";
    std::string lattice = "-";
    if (!rec.lattice.empty()) {
      lattice = std::to_string(rec.lattice[k]);
      cw = config.scheme == Scheme::kBinaryMl
               ? EncodeUnsigned(rec.lattice[k] + (1 << (config.bits - 1)), config.bits).ToString()
               : Encode(rec.lattice[k], config.bits).ToString();
    }
    out += fmt::format("{:>6}  {:>12.6f}  {:>7}  {}\n", k, rec.sources[k], lattice, cw);
  }
  out += "\nsubcarrier  |K_l|  p_l           y_l                          r_l  r_hat_l\n";
  for (int l = 0; l < config.subcarriers; ++l) {
    const auto& s = rec.subcarriers[l];
    out += fmt::format("{:>10}  {:>5}  {:<12.6g}  {:>12.6f} {:+12.6f}i  {:>4}  {:.6f}\n", l + 1,
                       s.active_count, s.scaling, s.y.real(), s.y.imag(), s.r, s.r_hat);
  }
  out += fmt::format("\ns_true  = {:.9f}\ns_quant = {:.9f}\ns_hat   = {:.9f}\n", rec.s_true,
                     rec.s_quant, rec.s_hat);
  out += fmt::format("squared error {:.6g} (quantization {:.6g}, transmission {:.6g})\n",
                     rec.squared_error(), rec.quantization_error(), rec.transmission_error());
  return out;
}

}  // namespace aircomp
