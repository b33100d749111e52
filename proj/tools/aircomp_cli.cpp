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

// Command-line front end over the aircomp C API.
//
//   aircomp sweep <config> [--seed N] [--trials N] [--out results.csv]
//   aircomp verify [--quick] [--seed N]
//   aircomp demo [--seed N] [--k K] [--b B] [--snr DB]
//   aircomp dump-channel --out channel.txt [--k K] [--l L] [--m M] [--seed N]
//
// Flags may also come from AIRCOMP_SEED, AIRCOMP_TRIALS, AIRCOMP_OUT and
// AIRCOMP_THREADS; explicit flags win.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "aircomp/aircomp.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int Report(aircomp_status status, const char* context) {
  std::fprintf(stderr, "aircomp: %s: %s: %s\n", context, aircomp_status_string(status),
               aircomp_last_error());
  return status == AIRCOMP_ERR_INTERNAL ? kExitFailure : kExitUsage;
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int threads = 0;
};

int RunSweep(const SweepArgs& args, bool seed_set, bool trials_set) {
  aircomp_config* config = nullptr;
  if (auto s = aircomp_config_load(args.config.c_str(), &config); s != AIRCOMP_OK) {
    return Report(s, "loading config");
  }
  std::unique_ptr<aircomp_config, decltype(&aircomp_config_free)> config_guard(
      config, &aircomp_config_free);
  if (seed_set) aircomp_config_set_seed(config, args.seed);
  if (trials_set) {
    if (auto s = aircomp_config_set_trials(config, args.trials); s != AIRCOMP_OK) {
      return Report(s, "--trials");
    }
  }
  std::string out = args.out;
  if (out.empty()) {
    const char* from_config = "";
    aircomp_config_output(config, &from_config);
    out = from_config;
  }

  aircomp_sweep* sweep = nullptr;
  if (auto s = aircomp_sweep_run(config, args.threads, &sweep); s != AIRCOMP_OK) {
    return Report(s, "running sweep");
  }
  std::unique_ptr<aircomp_sweep, decltype(&aircomp_sweep_free)> sweep_guard(
      sweep, &aircomp_sweep_free);

  if (out.empty() || out == "-") {
    char* csv = nullptr;
    if (auto s = aircomp_sweep_csv(sweep, &csv); s != AIRCOMP_OK) return Report(s, "csv");
    std::fputs(csv, stdout);
    aircomp_string_free(csv);
    return 0;
  }
  if (auto s = aircomp_sweep_write_csv(sweep, out.c_str()); s != AIRCOMP_OK) {
    return Report(s, "writing csv");
  }
  const std::string meta = out + ".json";
  if (auto s = aircomp_sweep_write_metadata(sweep, meta.c_str()); s != AIRCOMP_OK) {
    return Report(s, "writing metadata");
  }
  size_t rows = 0;
  aircomp_sweep_row_count(sweep, &rows);
  std::fprintf(stderr, "wrote %zu rows to %s (metadata: %s)\n", rows, out.c_str(), meta.c_str());
  return 0;
}

void PrintCheck(const aircomp_check* check, void*) {
  std::printf("[%s] %-20s %s\n", check->passed ? "PASS" : "FAIL", check->name, check->detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complement-coded digital over-the-air computation simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", aircomp_version());

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run the NMSE-vs-SNR sweeps of a config file");
  sweep->add_option("config", sweep_args.config, "Experiment config file")->required();
  auto* sweep_seed = sweep->add_option("--seed", sweep_args.seed, "Master seed for all experiments")
                         ->envname("AIRCOMP_SEED");
  auto* sweep_trials = sweep->add_option("--trials", sweep_args.trials, "Trials per SNR point")
                           ->envname("AIRCOMP_TRIALS");
  sweep->add_option("--out", sweep_args.out, "CSV output path ('-' for stdout)")
      ->envname("AIRCOMP_OUT");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)")
      ->envname("AIRCOMP_THREADS");

  bool quick = false;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the built-in oracle checks");
  verify->add_flag("--quick", quick, "Smaller sample sizes");
  verify->add_option("--seed", verify_seed, "Seed for the randomized checks")
      ->envname("AIRCOMP_SEED");

  std::uint64_t demo_seed = 1;
  int demo_k = 3, demo_b = 4;
  double demo_snr = 10.0;
  auto* demo = app.add_subcommand("demo", "Print every intermediate of one trial");
  demo->add_option("--seed", demo_seed, "Trial seed")->envname("AIRCOMP_SEED");
  demo->add_option("--k", demo_k, "Number of devices");
  demo->add_option("--b", demo_b, "Bit depth (also the subcarrier count)");
  demo->add_option("--snr", demo_snr, "SNR in dB");

  std::uint64_t dump_seed = 1;
  int dump_k = 20, dump_l = 8, dump_m = 4;
  double dump_noise = 1.0, dump_csi = 0.0;
  std::string dump_out;
  auto* dump = app.add_subcommand("dump-channel", "Write one channel realization as text");
  dump->add_option("--out", dump_out, "Output path")->required()->envname("AIRCOMP_OUT");
  dump->add_option("--seed", dump_seed, "Channel seed")->envname("AIRCOMP_SEED");
  dump->add_option("--k", dump_k, "Number of devices");
  dump->add_option("--l", dump_l, "Number of subcarriers");
  dump->add_option("--m", dump_m, "Number of multipath taps");
  dump->add_option("--noise", dump_noise, "Noise power per subcarrier");
  dump->add_option("--csi-error", dump_csi, "CSI error radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse problem is a usage error.
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (*sweep) {
    return RunSweep(sweep_args, sweep_seed->count() > 0 || std::getenv("AIRCOMP_SEED"),
                    sweep_trials->count() > 0 || std::getenv("AIRCOMP_TRIALS"));
  }
  if (*verify) {
    int failures = 0;
    if (auto s = aircomp_verify(quick ? 1 : 0, verify_seed, &PrintCheck, nullptr, &failures);
        s != AIRCOMP_OK) {
      return Report(s, "verify");
    }
    std::printf("%s\n", failures == 0 ? "all checks passed" : "some checks FAILED");
    return failures == 0 ? 0 : kExitFailure;
  }
  if (*demo) {
    char* text = nullptr;
    if (auto s = aircomp_demo(demo_seed, demo_k, demo_b, demo_snr, &text); s != AIRCOMP_OK) {
      return Report(s, "demo");
    }
    std::fputs(text, stdout);
    aircomp_string_free(text);
    return 0;
  }
  if (*dump) {
    if (auto s = aircomp_channel_dump(dump_k, dump_l, dump_m, dump_noise, dump_csi, dump_seed,
                                      dump_out.c_str());
        s != AIRCOMP_OK) {
      return Report(s, "dump-channel");
    }
    return 0;
  }
  return kExitUsage;
}
