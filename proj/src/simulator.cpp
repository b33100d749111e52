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

#include "aircomp/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "aircomp/errors.hpp"
#include "aircomp/selection.hpp"

namespace aircomp {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

int ThreadCount(const RunOptions& options, std::int64_t work) {
  int n = options.threads > 0 ? options.threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::int64_t>(n, std::max<std::int64_t>(work, 1)));
}

// Calls fn(i) for i in [0, count) across `threads` workers in contiguous
// chunks. fn must only write to per-index state.
template <typename Fn>
void ParallelFor(std::int64_t count, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::int64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end] {
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace

std::string SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kProposed: return "proposed";
    case Scheme::kAnalog: return "analog";
    case Scheme::kBinaryMl: return "binary_ml";
  }
  return "unknown";
}

void SimConfig::Validate() const {
  Require(devices >= 1, "K must be >= 1");
  Require(devices <= (1 << 15), "K must be <= 32768");
  Require(bits >= 1 && bits <= 16, "b must be in [1, 16]");
  Require(subcarriers >= 1, "L must be >= 1");
  Require(taps >= 1, "M must be >= 1");
  Require(tap_profile != TapProfile::kExponential || tap_decay > 0.0,
          "tap_decay must be positive");
  if (scheme != Scheme::kAnalog) {
    Require(subcarriers == bits, "coded schemes need L = b (one bit-plane per subcarrier)");
  }
  Require(s_max > 0.0 && std::isfinite(s_max), "s_max must be positive");
  Require(source != SourceKind::kGaussian || (source_std > 0.0 && std::isfinite(source_std)),
          "source_std must be positive");
  Require(varpi >= 1.0 && std::isfinite(varpi), "varpi must be >= 1");
  Require(power_mode == PowerMode::kGeometric || varpi == 1.0,
          "varpi other than 1 needs power_mode = geometric");
  Require(!snr_db.empty(), "snr grid must not be empty");
  for (double s : snr_db) Require(std::isfinite(s), "snr values must be finite");
  Require(trials >= 1, "trials must be >= 1");
  Require(csi_error_radius >= 0.0 && std::isfinite(csi_error_radius),
          "csi_error must be >= 0");
  Require(p_max > 0.0 && std::isfinite(p_max), "p_max must be positive");
  if (mimo) {
    Require(mimo->tx_antennas >= 1 && mimo->rx_antennas >= 1, "antenna counts must be >= 1");
  }
  Require(analog_threshold >= 0.0, "analog_threshold must be >= 0");
}

double SimConfig::NoisePowerForSnr(double snr_db_value) const {
  const double snr = std::pow(10.0, snr_db_value / 10.0);
  return p_max / (snr * subcarriers);
}

ChannelParams SimConfig::Channel(double noise_power) const {
  ChannelParams params;
  params.devices = devices;
  params.subcarriers = subcarriers;
  params.taps = taps;
  params.profile = tap_profile;
  params.tap_decay = tap_decay;
  params.noise_power = noise_power;
  params.csi_error_radius = csi_error_radius;
  return params;
}

TrialStreams TrialStreams::ForTrial(std::uint64_t seed, std::uint64_t trial) {
  return TrialStreams{Rng(StreamSeed(seed, trial, kSourceStream)),
                      Rng(StreamSeed(seed, trial, kNoiseStream))};
}

TrialRunner::TrialRunner(const SimConfig& config)
    : config_(config), quantizer_(QuantizerSpec::Make(config.bits, config.s_max)) {
  config_.Validate();
}

NetworkRealization TrialRunner::DrawRealization(double noise_power,
                                                std::uint64_t trial) const {
  const auto params = config_.Channel(noise_power);
  const auto seed = StreamSeed(config_.seed, trial, kChannelStream);
  return config_.mimo ? DrawMimoChannel(params, *config_.mimo, seed)
                      : DrawChannel(params, seed);
}

std::vector<double> TrialRunner::DrawSources(Rng& rng) const {
  std::vector<double> s(config_.devices);
  if (config_.source == SourceKind::kUniform) {
    std::uniform_real_distribution<double> u(-config_.s_max, config_.s_max);
    for (auto& x : s) x = u(rng);
  } else {
    std::normal_distribution<double> n(0.0, config_.source_std);
    for (auto& x : s) x = n(rng);
  }
  return s;
}

TrialRecord TrialRunner::Run(const NetworkRealization& net, TrialStreams& streams) const {
  if (net.devices() != config_.devices || net.subcarriers() != config_.subcarriers) {
    throw ContractViolation("realization dimensions do not match the config");
  }
  return config_.scheme == Scheme::kAnalog ? RunAnalog(net, streams)
                                           : RunCoded(net, streams);
}

TrialRecord TrialRunner::RunCoded(const NetworkRealization& net,
                                  TrialStreams& streams) const {
  const int K = config_.devices;
  const int L = config_.subcarriers;
  const bool binary = config_.scheme == Scheme::kBinaryMl;
  const auto mode = config_.source == SourceKind::kGaussian ? RangeMode::kClamp
                                                            : RangeMode::kStrict;
  const std::int32_t offset = std::int32_t{1} << (config_.bits - 1);

  TrialRecord rec;
  rec.sources = DrawSources(streams.source);
  rec.lattice.resize(K);
  std::vector<Codeword> codewords;
  codewords.reserve(K);
  for (int k = 0; k < K; ++k) {
    const auto v = Quantize(rec.sources[k], quantizer_, mode);
    rec.lattice[k] = v;
    rec.s_true += rec.sources[k];
    rec.s_quant += Dequantize(v, quantizer_);
    codewords.push_back(binary ? EncodeUnsigned(v + offset, L) : Encode(v, L));
  }
  const auto r_true = SumBitPlanes(codewords);

  // The binary baseline keeps the uniform split of its reference design.
  PowerBudget budgets(K, L, config_.p_max, binary ? 1.0 : config_.EffectiveVarpi());

  std::vector<Selection> selections(L);
  SelectionInstance instance;
  instance.effective_gains.resize(K);
  for (int l = 0; l < L; ++l) {
    instance.noise_power = net.noise_power[l];
    for (int k = 0; k < K; ++k) {
      instance.effective_gains[k] = std::norm(net.h_est(k, l)) * budgets(k, l);
    }
    selections[l] = GreedySelect(instance, GreedyOptions{config_.allow_empty});
  }

  if (config_.reallocate) {
    // Move each device's budget on subcarriers where it is silent onto the
    // subcarriers where it transmits, proportionally, then re-derive p_l for
    // the same active sets.
    for (int k = 0; k < K; ++k) {
      double idle = 0.0, used = 0.0;
      for (int l = 0; l < L; ++l) {
        const bool on = std::binary_search(selections[l].active.begin(),
                                           selections[l].active.end(), k);
        (on ? used : idle) += budgets(k, l);
      }
      if (used <= 0.0 || idle <= 0.0) continue;
      for (int l = 0; l < L; ++l) {
        const bool on = std::binary_search(selections[l].active.begin(),
                                           selections[l].active.end(), k);
        budgets(k, l) = on ? budgets(k, l) * (1.0 + idle / used) : 0.0;
      }
    }
    for (int l = 0; l < L; ++l) {
      if (selections[l].active.empty()) continue;
      double p = std::numeric_limits<double>::infinity();
      for (int k : selections[l].active) {
        p = std::min(p, std::norm(net.h_est(k, l)) * budgets(k, l));
      }
      selections[l].scaling = p;
    }
  }

  std::vector<double> r_hat(L);
  std::vector<double> symbols(K);
  std::vector<Complex> weights(K);
  rec.subcarriers.resize(L);
  for (int l = 0; l < L; ++l) {
    const auto plan = MakePlan(selections[l].active, selections[l].scaling,
                               net.noise_power[l], K);
    for (int k = 0; k < K; ++k) {
      symbols[k] = 2.0 * codewords[k].bit(l + 1) - 1.0;
      // CSI error enters through rho only; the channel applies the true h.
      weights[k] = net.h(k, l) * Preprocess(net.h_est(k, l), plan.scaling, plan.IsActive(k));
    }
    const Complex y = MacSuperpose(symbols, weights, plan.noise_power, streams.noise);
    const bool ml = binary || config_.detector == Detector::kMl;
    r_hat[l] = ml ? MlDetect(y, plan) : LmmseDetect(y, plan, config_.round_lmmse);
    rec.subcarriers[l] = SubcarrierTrace{plan.active_count(), plan.scaling,
                                         static_cast<double>(r_true[l]), r_hat[l], y};
  }

  if (binary) {
    rec.s_hat = DecodeUnsigned(r_hat, quantizer_.zeta()) -
                static_cast<double>(K) * offset / quantizer_.zeta();
  } else {
    rec.s_hat = Decode(r_hat, quantizer_.zeta());
  }
  return rec;
}

TrialRecord TrialRunner::RunAnalog(const NetworkRealization& net,
                                   TrialStreams& streams) const {
  const int K = config_.devices;
  const int L = config_.subcarriers;
  const double per_subcarrier = config_.p_max / L;

  TrialRecord rec;
  rec.sources = DrawSources(streams.source);
  std::vector<double> amplitude(K);
  for (int k = 0; k < K; ++k) {
    rec.s_true += rec.sources[k];
    amplitude[k] = std::clamp(rec.sources[k] / config_.s_max, -1.0, 1.0);
  }
  rec.s_quant = rec.s_true;

  std::vector<Complex> weights(K);
  std::vector<int> active;
  rec.subcarriers.resize(L);
  double estimate_sum = 0.0;
  for (int l = 0; l < L; ++l) {
    active.clear();
    double p = std::numeric_limits<double>::infinity();
    double active_sum = 0.0;
    for (int k = 0; k < K; ++k) {
      const double gain = std::norm(net.h_est(k, l));
      if (gain >= config_.analog_threshold && gain > 0.0) {
        active.push_back(k);
        p = std::min(p, gain * per_subcarrier);
        active_sum += config_.s_max * amplitude[k];
      }
    }
    if (active.empty()) p = 0.0;
    std::size_t next = 0;
    for (int k = 0; k < K; ++k) {
      const bool on = next < active.size() && active[next] == k;
      if (on) ++next;
      weights[k] = net.h(k, l) * Preprocess(net.h_est(k, l), p, on);
    }
    const Complex y = MacSuperpose(amplitude, weights, net.noise_power[l], streams.noise);
    // Truncated devices are replaced by the source mean, 0.
    const double estimate = active.empty() ? 0.0 : config_.s_max * y.real() / std::sqrt(p);
    estimate_sum += estimate;
    rec.subcarriers[l] = SubcarrierTrace{static_cast<int>(active.size()), p,
                                         active_sum, estimate, y};
  }
  rec.s_hat = estimate_sum / L;
  return rec;
}

TrialRecord RunTrial(const SimConfig& config, const NetworkRealization& net,
                     TrialStreams& streams) {
  return TrialRunner(config).Run(net, streams);
}

TrialRecord RunAnalogBaseline(const SimConfig& config, const NetworkRealization& net,
                              TrialStreams& streams) {
  if (config.scheme != Scheme::kAnalog) {
    throw ContractViolation("analog baseline needs scheme = analog");
  }
  return TrialRunner(config).Run(net, streams);
}

double Nmse(std::span<const TrialRecord> records) {
  if (records.empty()) throw ContractViolation("NMSE needs at least one record");
  double num = 0.0, den = 0.0;
  for (const auto& r : records) {
    num += r.squared_error();
    den += r.s_true * r.s_true;
  }
  if (!(den > 0.0)) throw ContractViolation("NMSE is undefined when every true sum is zero");
  return num / den;
}

double PointSamples::Nmse() const {
  const double den = std::accumulate(true_square.begin(), true_square.end(), 0.0);
  if (!(den > 0.0)) throw ContractViolation("NMSE is undefined when every true sum is zero");
  return std::accumulate(squared_error.begin(), squared_error.end(), 0.0) / den;
}

double PointSamples::QuantizationNmse() const {
  const double den = std::accumulate(true_square.begin(), true_square.end(), 0.0);
  if (!(den > 0.0)) throw ContractViolation("NMSE is undefined when every true sum is zero");
  return std::accumulate(quantization_error.begin(), quantization_error.end(), 0.0) / den;
}

double PointSamples::NmseStdError() const {
  // Delta method for a ratio of means.
  const auto n = static_cast<double>(squared_error.size());
  if (n < 2) return 0.0;
  const double ratio = Nmse();
  const double mean_den = std::accumulate(true_square.begin(), true_square.end(), 0.0) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < squared_error.size(); ++i) {
    const double d = squared_error[i] - ratio * true_square[i];
    ss += d * d;
  }
  return std::sqrt(ss / (n * (n - 1.0))) / mean_den;
}

PointSamples SimulatePoint(const SimConfig& config, double snr_db, RunOptions options) {
  const TrialRunner runner(config);
  const int L = config.subcarriers;
  const auto trials = config.trials;

  PointSamples out;
  out.snr_db = snr_db;
  out.noise_power = config.NoisePowerForSnr(snr_db);
  out.squared_error.resize(trials);
  out.quantization_error.resize(trials);
  out.true_square.resize(trials);
  std::vector<double> active(static_cast<std::size_t>(trials) * L);
  std::vector<double> scaling(static_cast<std::size_t>(trials) * L);

  ParallelFor(trials, ThreadCount(options, trials), [&](std::int64_t t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const auto net = runner.DrawRealization(out.noise_power, trial);
    auto streams = TrialStreams::ForTrial(config.seed, trial);
    const auto rec = runner.Run(net, streams);
    out.squared_error[t] = rec.squared_error();
    out.quantization_error[t] = rec.quantization_error();
    out.true_square[t] = rec.s_true * rec.s_true;
    for (int l = 0; l < L; ++l) {
      active[t * L + l] = rec.subcarriers[l].active_count;
      scaling[t * L + l] = rec.subcarriers[l].scaling;
    }
  });

  // Fixed-order reduction keeps results independent of the thread count.
  out.active_per_subcarrier.assign(L, 0.0);
  out.scaling_per_subcarrier.assign(L, 0.0);
  for (std::int64_t t = 0; t < trials; ++t) {
    for (int l = 0; l < L; ++l) {
      out.active_per_subcarrier[l] += active[t * L + l];
      out.scaling_per_subcarrier[l] += scaling[t * L + l];
    }
  }
  return out;
}

SweepResult Sweep(const SimConfig& config, const std::string& name, RunOptions options) {
  config.Validate();
  SweepResult result;
  result.name = name;
  result.config = config;
  const int L = config.subcarriers;
  const auto n = static_cast<double>(config.trials);
  for (double snr : config.snr_db) {
    const auto start = std::chrono::steady_clock::now();
    const auto samples = SimulatePoint(config, snr, options);
    SweepPoint point;
    point.snr_db = snr;
    point.noise_power = samples.noise_power;
    point.nmse = samples.Nmse();
    point.std_error = samples.NmseStdError();
    point.quantization_nmse = samples.QuantizationNmse();
    point.trials = config.trials;
    for (int l = 0; l < L; ++l) {
      point.mean_active_per_subcarrier.push_back(samples.active_per_subcarrier[l] / n);
      point.mean_scaling_per_subcarrier.push_back(samples.scaling_per_subcarrier[l] / n);
    }
    point.mean_active = std::accumulate(point.mean_active_per_subcarrier.begin(),
                                        point.mean_active_per_subcarrier.end(), 0.0) / L;
    point.mean_scaling = std::accumulate(point.mean_scaling_per_subcarrier.begin(),
                                         point.mean_scaling_per_subcarrier.end(), 0.0) / L;
    point.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.points.push_back(std::move(point));
  }
  return result;
}

}  // namespace aircomp
