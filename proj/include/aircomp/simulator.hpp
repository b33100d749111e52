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

#ifndef AIRCOMP_SIMULATOR_HPP_
#define AIRCOMP_SIMULATOR_HPP_

// Monte Carlo evaluation of the coded AirComp pipeline and its baselines.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/codec.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/transceiver.hpp"

namespace aircomp {

enum class Scheme { kProposed, kAnalog, kBinaryMl };
enum class SourceKind { kUniform, kGaussian };
enum class PowerMode { kUniform, kGeometric };
enum class Detector { kLmmse, kMl };

struct SimConfig {
  int devices = 20;
  int bits = 8;
  int subcarriers = 8;
  int taps = 4;
  TapProfile tap_profile = TapProfile::kUniform;
  double tap_decay = 1.0;

  // Uniform sources are drawn on [-s_max, s_max]. Gaussian sources have
  // standard deviation source_std and saturate at +-s_max before quantizing.
  SourceKind source = SourceKind::kUniform;
  double s_max = 1.0;
  double source_std = 1.0 / 3.0;

  Scheme scheme = Scheme::kProposed;
  PowerMode power_mode = PowerMode::kUniform;
  double varpi = 1.0;  // only used in geometric mode
  Detector detector = Detector::kLmmse;
  bool round_lmmse = false;
  bool reallocate = false;
  bool allow_empty = false;

  std::vector<double> snr_db = {-10, -5, 0, 5, 10, 15, 20};
  std::int64_t trials = 100000;
  double csi_error_radius = 0.0;
  double p_max = 1.0;
  std::uint64_t seed = 1;
  std::optional<MimoParams> mimo;
  double analog_threshold = 0.01;

  // Throws ContractViolation describing the first invalid field.
  void Validate() const;
  double EffectiveVarpi() const {
    return power_mode == PowerMode::kGeometric ? varpi : 1.0;
  }
  // sigma^2 = p_max / (snr * L), snr linear.
  double NoisePowerForSnr(double snr_db_value) const;
  ChannelParams Channel(double noise_power) const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

std::string SchemeName(Scheme s);

struct SubcarrierTrace {
  int active_count = 0;
  double scaling = 0.0;
  double r = 0.0;      // true bit-plane sum (analog: true active sum)
  double r_hat = 0.0;  // detected value (analog: per-subcarrier sum estimate)
  Complex y;
};

struct TrialRecord {
  double s_true = 0.0;
  double s_quant = 0.0;
  double s_hat = 0.0;
  std::vector<double> sources;
  std::vector<std::int32_t> lattice;  // empty for the analog scheme
  std::vector<SubcarrierTrace> subcarriers;

  double squared_error() const { return (s_hat - s_true) * (s_hat - s_true); }
  double quantization_error() const { return (s_quant - s_true) * (s_quant - s_true); }
  double transmission_error() const { return (s_hat - s_quant) * (s_hat - s_quant); }
};

struct TrialStreams {
  Rng source;
  Rng noise;

  static TrialStreams ForTrial(std::uint64_t seed, std::uint64_t trial);
};

// Precomputes the quantizer and power budgets of a config.
class TrialRunner {
 public:
  explicit TrialRunner(const SimConfig& config);

  const SimConfig& config() const { return config_; }
  const QuantizerSpec& quantizer() const { return quantizer_; }

  TrialRecord Run(const NetworkRealization& net, TrialStreams& streams) const;

  // Draws the realization of trial `trial` at the given noise power.
  NetworkRealization DrawRealization(double noise_power, std::uint64_t trial) const;

  std::vector<double> DrawSources(Rng& rng) const;

 private:
  TrialRecord RunCoded(const NetworkRealization& net, TrialStreams& streams) const;
  TrialRecord RunAnalog(const NetworkRealization& net, TrialStreams& streams) const;

  SimConfig config_;
  QuantizerSpec quantizer_;
};

// quantize -> encode -> BPSK -> plan -> superpose -> detect -> decode.
TrialRecord RunTrial(const SimConfig& config, const NetworkRealization& net,
                     TrialStreams& streams);

// Analog baseline: amplitude s_k / s_max on every subcarrier, truncated
// inversion with |h|^2 >= analog_threshold, averaged per-subcarrier sums.
TrialRecord RunAnalogBaseline(const SimConfig& config, const NetworkRealization& net,
                              TrialStreams& streams);

// sum (s_hat - s_true)^2 / sum s_true^2. Throws ContractViolation for no
// records or an all-zero denominator.
double Nmse(std::span<const TrialRecord> records);

// Per-trial samples at one SNR point, in trial order.
struct PointSamples {
  double snr_db = 0.0;
  double noise_power = 0.0;
  std::vector<double> squared_error;
  std::vector<double> quantization_error;
  std::vector<double> true_square;
  std::vector<double> active_per_subcarrier;  // summed over trials
  std::vector<double> scaling_per_subcarrier;  // summed over trials

  double Nmse() const;
  double NmseStdError() const;
  double QuantizationNmse() const;
};

struct SweepPoint {
  double snr_db = 0.0;
  double noise_power = 0.0;
  double nmse = 0.0;
  double std_error = 0.0;
  double quantization_nmse = 0.0;
  double mean_active = 0.0;
  double mean_scaling = 0.0;
  std::vector<double> mean_active_per_subcarrier;
  std::vector<double> mean_scaling_per_subcarrier;
  std::int64_t trials = 0;
  double runtime_seconds = 0.0;
};

struct SweepResult {
  std::string name;
  SimConfig config;
  std::vector<SweepPoint> points;
};

struct RunOptions {
  int threads = 0;  // 0: hardware concurrency
};

PointSamples SimulatePoint(const SimConfig& config, double snr_db, RunOptions options = {});

SweepResult Sweep(const SimConfig& config, const std::string& name = "default",
                  RunOptions options = {});

}  // namespace aircomp

#endif  // AIRCOMP_SIMULATOR_HPP_
