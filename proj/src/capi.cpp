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

#include "aircomp/aircomp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <fstream>
#include <sstream>
#include <string>

#include "aircomp/channel.hpp"
#include "aircomp/codec.hpp"
#include "aircomp/config.hpp"
#include "aircomp/errors.hpp"
#include "aircomp/report.hpp"
#include "aircomp/selection.hpp"
#include "aircomp/simulator.hpp"
#include "aircomp/transceiver.hpp"
#include "aircomp/verify.hpp"

struct aircomp_config {
  aircomp::ExperimentSpec spec;
};

struct aircomp_sweep {
  std::vector<aircomp::SweepResult> results;
};

namespace {

thread_local std::string g_last_error;

aircomp_status Fail(aircomp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn and translates exceptions into status codes.
template <typename Fn>
aircomp_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const aircomp::ParseError& e) {
    return Fail(AIRCOMP_ERR_PARSE, e.what());
  } catch (const aircomp::RangeError& e) {
    return Fail(AIRCOMP_ERR_RANGE, e.what());
  } catch (const aircomp::ContractViolation& e) {
    return Fail(AIRCOMP_ERR_CONTRACT, e.what());
  } catch (const std::exception& e) {
    return Fail(AIRCOMP_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(AIRCOMP_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

aircomp_status NullArgument(const char* what) {
  return Fail(AIRCOMP_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* aircomp_version(void) { return "1.0.0"; }

const char* aircomp_last_error(void) { return g_last_error.c_str(); }

const char* aircomp_status_string(aircomp_status status) {
  switch (status) {
    case AIRCOMP_OK: return "ok";
    case AIRCOMP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AIRCOMP_ERR_PARSE: return "parse error";
    case AIRCOMP_ERR_RANGE: return "range error";
    case AIRCOMP_ERR_CONTRACT: return "contract violation";
    case AIRCOMP_ERR_IO: return "i/o error";
    case AIRCOMP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void aircomp_string_free(char* s) { std::free(s); }

aircomp_status aircomp_config_parse(const char* text, aircomp_config** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    *out = new aircomp_config{aircomp::ParseConfig(text)};
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_config_load(const char* path, aircomp_config** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return Fail(AIRCOMP_ERR_IO, std::string("cannot open config file '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new aircomp_config{aircomp::ParseConfig(buf.str())};
    return AIRCOMP_OK;
  });
}

void aircomp_config_free(aircomp_config* config) { delete config; }

aircomp_status aircomp_config_experiment_count(const aircomp_config* config, size_t* count) {
  if (config == nullptr) return NullArgument("config");
  if (count == nullptr) return NullArgument("count");
  *count = config->spec.experiments.size();
  return AIRCOMP_OK;
}

aircomp_status aircomp_config_output(const aircomp_config* config, const char** path) {
  if (config == nullptr) return NullArgument("config");
  if (path == nullptr) return NullArgument("path");
  *path = config->spec.output.c_str();
  return AIRCOMP_OK;
}

aircomp_status aircomp_config_set_seed(aircomp_config* config, uint64_t seed) {
  if (config == nullptr) return NullArgument("config");
  for (auto& e : config->spec.experiments) e.config.seed = seed;
  return AIRCOMP_OK;
}

aircomp_status aircomp_config_set_trials(aircomp_config* config, int64_t trials) {
  if (config == nullptr) return NullArgument("config");
  if (trials < 1) return Fail(AIRCOMP_ERR_CONTRACT, "trials must be >= 1");
  for (auto& e : config->spec.experiments) e.config.trials = trials;
  return AIRCOMP_OK;
}

aircomp_status aircomp_config_serialize(const aircomp_config* config, char** text) {
  if (config == nullptr) return NullArgument("config");
  if (text == nullptr) return NullArgument("text");
  return Guard([&] {
    *text = CopyString(aircomp::SerializeConfig(config->spec));
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_sweep_run(const aircomp_config* config, int threads,
                                 aircomp_sweep** out) {
  if (config == nullptr) return NullArgument("config");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto sweep = std::make_unique<aircomp_sweep>();
    for (const auto& e : config->spec.experiments) {
      sweep->results.push_back(aircomp::Sweep(e.config, e.name, aircomp::RunOptions{threads}));
    }
    *out = sweep.release();
    return AIRCOMP_OK;
  });
}

void aircomp_sweep_free(aircomp_sweep* sweep) { delete sweep; }

aircomp_status aircomp_sweep_row_count(const aircomp_sweep* sweep, size_t* count) {
  if (sweep == nullptr) return NullArgument("sweep");
  if (count == nullptr) return NullArgument("count");
  size_t n = 0;
  for (const auto& r : sweep->results) n += r.points.size();
  *count = n;
  return AIRCOMP_OK;
}

aircomp_status aircomp_sweep_get_row(const aircomp_sweep* sweep, size_t index,
                                     aircomp_sweep_row* row) {
  if (sweep == nullptr) return NullArgument("sweep");
  if (row == nullptr) return NullArgument("row");
  for (const auto& r : sweep->results) {
    if (index < r.points.size()) {
      const auto& p = r.points[index];
      *row = aircomp_sweep_row{r.name.c_str(), p.snr_db,       p.nmse,   p.std_error,
                               p.quantization_nmse, p.mean_active, p.mean_scaling,
                               p.trials,            r.config.seed};
      return AIRCOMP_OK;
    }
    index -= r.points.size();
  }
  return Fail(AIRCOMP_ERR_INVALID_ARGUMENT, "row index out of range");
}

aircomp_status aircomp_sweep_csv(const aircomp_sweep* sweep, char** text) {
  if (sweep == nullptr) return NullArgument("sweep");
  if (text == nullptr) return NullArgument("text");
  return Guard([&] {
    std::ostringstream os;
    aircomp::WriteCsv(os, sweep->results);
    *text = CopyString(os.str());
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_sweep_write_csv(const aircomp_sweep* sweep, const char* path) {
  if (sweep == nullptr) return NullArgument("sweep");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return Fail(AIRCOMP_ERR_IO, std::string("cannot write '") + path + "'");
    aircomp::WriteCsv(os, sweep->results);
    return os ? AIRCOMP_OK : Fail(AIRCOMP_ERR_IO, std::string("write failed for '") + path + "'");
  });
}

aircomp_status aircomp_sweep_write_metadata(const aircomp_sweep* sweep, const char* path) {
  if (sweep == nullptr) return NullArgument("sweep");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return Fail(AIRCOMP_ERR_IO, std::string("cannot write '") + path + "'");
    aircomp::WriteMetadata(os, sweep->results);
    return os ? AIRCOMP_OK : Fail(AIRCOMP_ERR_IO, std::string("write failed for '") + path + "'");
  });
}

aircomp_status aircomp_verify(int quick, uint64_t seed, aircomp_check_fn callback, void* user,
                              int* failures) {
  return Guard([&] {
    aircomp::VerifyOptions options{quick != 0, seed};
    int failed = 0;
    using Check = aircomp::CheckResult (*)(const aircomp::VerifyOptions&);
    for (Check check : {&aircomp::VerifyExactSum, &aircomp::VerifyGreedyOptimality,
                        &aircomp::VerifyLmmse, &aircomp::VerifyBernoulli}) {
      const auto result = check(options);
      if (!result.passed) ++failed;
      if (callback != nullptr) {
        const aircomp_check c{result.name.c_str(), result.passed ? 1 : 0, result.detail.c_str()};
        callback(&c, user);
      }
    }
    if (failures != nullptr) *failures = failed;
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_demo(uint64_t seed, int devices, int bits, double snr_db, char** text) {
  if (text == nullptr) return NullArgument("text");
  return Guard([&] {
    aircomp::SimConfig config;
    config.devices = devices;
    config.bits = bits;
    config.subcarriers = bits;
    config.seed = seed;
    config.trials = 1;
    config.snr_db = {snr_db};
    config.Validate();
    *text = CopyString(aircomp::TraceTrial(config, snr_db));
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_channel_dump(int devices, int subcarriers, int taps, double noise_power,
                                    double csi_error_radius, uint64_t seed, const char* path) {
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    aircomp::ChannelParams params;
    params.devices = devices;
    params.subcarriers = subcarriers;
    params.taps = taps;
    params.noise_power = noise_power;
    params.csi_error_radius = csi_error_radius;
    const auto net = aircomp::DrawChannel(params, seed);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return Fail(AIRCOMP_ERR_IO, std::string("cannot write '") + path + "'");
    aircomp::WriteRealization(os, net);
    return os ? AIRCOMP_OK : Fail(AIRCOMP_ERR_IO, std::string("write failed for '") + path + "'");
  });
}

aircomp_status aircomp_encode(int64_t value, int length, uint8_t* bits) {
  if (bits == nullptr) return NullArgument("bits");
  return Guard([&] {
    const auto cw = aircomp::Encode(value, length);
    std::memcpy(bits, cw.bits().data(), cw.bits().size());
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_decode(const double* sums, int length, double zeta, double* value) {
  if (sums == nullptr) return NullArgument("sums");
  if (value == nullptr) return NullArgument("value");
  if (length < 1) return Fail(AIRCOMP_ERR_INVALID_ARGUMENT, "length must be >= 1");
  return Guard([&] {
    *value = aircomp::Decode(std::span<const double>(sums, static_cast<size_t>(length)), zeta);
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_greedy_select(const double* effective_gains, int devices,
                                     double noise_power, uint8_t* active_mask, double* scaling,
                                     double* mse) {
  if (effective_gains == nullptr) return NullArgument("effective_gains");
  if (devices < 1) return Fail(AIRCOMP_ERR_INVALID_ARGUMENT, "devices must be >= 1");
  return Guard([&] {
    aircomp::SelectionInstance inst;
    inst.effective_gains.assign(effective_gains, effective_gains + devices);
    inst.noise_power = noise_power;
    const auto sel = aircomp::GreedySelect(inst);
    if (active_mask != nullptr) {
      std::memset(active_mask, 0, static_cast<size_t>(devices));
      for (int k : sel.active) active_mask[k] = 1;
    }
    if (scaling != nullptr) *scaling = sel.scaling;
    if (mse != nullptr) *mse = sel.mse;
    return AIRCOMP_OK;
  });
}

aircomp_status aircomp_lmmse_mse(double scaling, int active, int devices, double noise_power,
                                 double* mse) {
  if (mse == nullptr) return NullArgument("mse");
  if (scaling < 0.0 || active < 0 || active > devices || !(noise_power > 0.0)) {
    return Fail(AIRCOMP_ERR_CONTRACT, "need scaling >= 0, 0 <= active <= devices, noise > 0");
  }
  *mse = aircomp::MseClosedForm(scaling, active, devices, noise_power);
  return AIRCOMP_OK;
}

}  // extern "C"
