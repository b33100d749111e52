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

#include "aircomp/verify.hpp"

#include <fmt/format.h>

#include <array>
#include <bit>
#include <cmath>
#include <random>

#include "aircomp/channel.hpp"
#include "aircomp/codec.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/selection.hpp"
#include "aircomp/transceiver.hpp"

namespace aircomp {
namespace {

// Decodes the bitwise sum of every K-tuple of b-bit lattice values and
// compares it with the integer sum. Returns the number of mismatches.
std::int64_t ExhaustiveExactSum(int bits, int devices, std::int64_t& cases) {
  const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
  const std::int64_t span = std::int64_t{1} << bits;
  std::vector<Codeword> table;
  for (std::int64_t v = lo; v < lo + span; ++v) table.push_back(Encode(v, bits));

  std::vector<std::int64_t> index(devices, 0);
  std::vector<Codeword> words(devices);
  std::int64_t failures = 0;
  cases = 0;
  while (true) {
    std::int64_t sum = 0;
    for (int k = 0; k < devices; ++k) {
      words[k] = table[index[k]];
      sum += lo + index[k];
    }
    if (DecodeInteger(SumBitPlanes(words)) != sum) ++failures;
    ++cases;
    int k = 0;
    while (k < devices && ++index[k] == span) index[k++] = 0;
    if (k == devices) break;
  }
  return failures;
}

}  // namespace

double LambdaPerturbationZ(double scaling, int active, int devices, double noise_power,
                           std::int64_t trials) {
  // Scaling lambda by 1.1 raises the MSE by (0.1 lambda)^2 E[Re{y}^2]; the
  // paired difference of two empirical MSEs has standard deviation about
  // 2 (0.1 lambda) sqrt(e E[Re{y}^2] / N). Their ratio simplifies to
  // 0.05 sqrt(N) * sd(lambda Re{y}) / sqrt(e).
  const double n = active;
  const double gamma = scaling / noise_power;
  const double signal_var = n * n * gamma / (2.0 * (2.0 * n * gamma + 1.0));
  const double e = MseClosedForm(scaling, active, devices, noise_power);
  return 0.05 * std::sqrt(static_cast<double>(trials)) * std::sqrt(signal_var / e);
}

CheckResult VerifyExactSum(const VerifyOptions& options) {
  CheckResult out{"exact-sum", true, ""};
  std::int64_t failures = 0;
  std::int64_t small_cases = 0, medium_cases = 0;
  failures += ExhaustiveExactSum(3, 3, small_cases);
  failures += ExhaustiveExactSum(5, 3, medium_cases);

  const int random_cases = options.quick ? 10000 : 100000;
  const int bits = 8, devices = 20;
  Rng rng(StreamSeed(options.seed, 0, 101));
  std::uniform_int_distribution<std::int64_t> pick(-(1 << (bits - 1)), (1 << (bits - 1)) - 1);
  std::vector<Codeword> words(devices);
  for (int t = 0; t < random_cases; ++t) {
    std::int64_t sum = 0;
    for (auto& w : words) {
      const auto v = pick(rng);
      sum += v;
      w = Encode(v, bits);
    }
    if (DecodeInteger(SumBitPlanes(words)) != sum) ++failures;
  }
  out.passed = failures == 0;
  out.detail = fmt::format(
      "exhaustive b=3,K=3 ({} cases) and b=5,K=3 ({} cases), random b=8,K=20 ({} cases): "
      "{} mismatches",
      small_cases, medium_cases, random_cases, failures);
  return out;
}

CheckResult VerifyGreedyOptimality(const VerifyOptions& options) {
  CheckResult out{"greedy-optimality", true, ""};
  const int instances = options.quick ? 1000 : 10000;
  Rng rng(StreamSeed(options.seed, 0, 102));
  std::uniform_int_distribution<int> pick_k(2, 12);
  std::uniform_int_distribution<int> pick_l(0, 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < instances; ++i) {
    ChannelParams params;
    params.devices = pick_k(rng);
    params.subcarriers = 8;
    params.taps = 4;
    const auto net = DrawChannel(params, rng());
    const int l = pick_l(rng);
    const auto split = AllocatePower(1.0, 8, 1.0 + 2.0 * unit(rng));
    SelectionInstance inst;
    inst.noise_power = std::pow(10.0, -3.0 + 4.0 * unit(rng)) * split[l];
    for (int k = 0; k < params.devices; ++k) {
      // Unequal device budgets exercise the effective-gain sort key.
      const double budget = split[l] * (0.5 + 1.5 * unit(rng));
      inst.effective_gains.push_back(std::norm(net.h(k, l)) * budget);
    }
    const auto greedy = GreedySelect(inst);
    const auto oracle = BruteForceSelect(inst);
    const double rel = std::abs(greedy.mse - oracle.mse) / oracle.mse;
    worst = std::max(worst, rel);
    bool feasible = true;
    for (const auto* sel : {&greedy, &oracle}) {
      for (int k : sel->active) feasible = feasible && sel->scaling <= inst.effective_gains[k];
    }
    if (!(rel <= 1e-12) || !feasible) ++failures;
  }
  out.passed = failures == 0;
  out.detail = fmt::format("{} instances, K in [2,12]: {} failures, worst relative gap {:.3g}",
                           instances, failures, worst);
  return out;
}

CheckResult VerifyLmmse(const VerifyOptions& options) {
  CheckResult out{"lmmse-closed-form", true, ""};
  const int tuples = options.quick ? 5 : 20;
  const int trials = options.quick ? 20000 : 100000;
  Rng rng(StreamSeed(options.seed, 0, 103));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0, beaten_count = 0;
  double worst_z = 0.0;
  for (int t = 0; t < tuples; ++t) {
    int K = 0, n = 0;
    double p = 0.0, s2 = 0.0;
    do {
      K = 1 + static_cast<int>(unit(rng) * 30);
      n = 1 + static_cast<int>(unit(rng) * K);
      p = std::pow(10.0, -2.0 + 3.0 * unit(rng));
      s2 = std::pow(10.0, -2.0 + 3.0 * unit(rng));
    } while (LambdaPerturbationZ(p, n, K, s2, trials) < 4.0);
    std::vector<int> active(n);
    for (int k = 0; k < n; ++k) active[k] = k;
    const auto plan = MakePlan(active, p, s2, K);
    const double closed = MseClosedForm(p, n, K, s2);

    // Perturbed detectors: lambda * {0.9, 1, 1.1} x mu + {-0.5, 0, 0.5}.
    std::array<double, 9> sse{};
    double sum_sq = 0.0, sum_sq2 = 0.0;
    std::vector<double> symbols(K);
    std::vector<Complex> weights(K);
    for (int i = 0; i < trials; ++i) {
      int r = 0;
      for (int k = 0; k < K; ++k) {
        const int bit = static_cast<int>(rng() & 1U);
        r += bit;
        symbols[k] = 2.0 * bit - 1.0;
        const Complex h = DrawComplexGaussian(1.0, rng);
        weights[k] = h * Preprocess(h, p, k < n);
      }
      const Complex y = MacSuperpose(symbols, weights, s2, rng);
      const double err = LmmseDetect(y, plan) - r;
      sum_sq += err * err;
      sum_sq2 += err * err * err * err;
      int j = 0;
      for (double ls : {0.9, 1.0, 1.1}) {
        for (double ms : {-0.5, 0.0, 0.5}) {
          const double e = plan.lambda * ls * y.real() + plan.mu + ms - r;
          sse[j++] += e * e;
        }
      }
    }
    const double mse = sum_sq / trials;
    const double se = std::sqrt((sum_sq2 / trials - mse * mse) / trials);
    const double z = std::abs(mse - closed) / se;
    worst_z = std::max(worst_z, z);
    bool beaten = false;
    for (int j = 0; j < 9; ++j) {
      if (j != 4 && sse[j] < sse[4]) beaten = true;
    }
    if (z > 3.0 || beaten) ++failures;
    if (beaten) ++beaten_count;
  }
  out.passed = failures == 0;
  out.detail = fmt::format(
      "{} tuples x {} trials: {} failures ({} beaten by a perturbed detector), worst |z| = {:.2f}",
      tuples, trials, failures, beaten_count, worst_z);
  return out;
}

CheckResult VerifyBernoulli(const VerifyOptions& options) {
  CheckResult out{"bernoulli-bits", true, ""};
  const int bits = 8;
  std::array<int, bits> ones{};
  for (int v = -(1 << (bits - 1)); v < (1 << (bits - 1)); ++v) {
    const auto cw = Encode(v, bits);
    for (int l = 0; l < bits; ++l) ones[l] += cw.bits()[l];
  }
  bool exact = true;
  for (int c : ones) exact = exact && c == (1 << (bits - 1));

  const auto spec = QuantizerSpec::Make(bits, 1.0);
  const std::int64_t samples = options.quick ? 12500 : 125000;  // x 8 bits
  Rng rng(StreamSeed(options.seed, 0, 104));
  std::uniform_real_distribution<double> src(-1.0, 1.0);
  std::array<std::int64_t, bits> mc{};
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto cw = Encode(Quantize(src(rng), spec), bits);
    for (int l = 0; l < bits; ++l) mc[l] += cw.bits()[l];
  }
  std::int64_t total = 0;
  double worst = 0.0;
  for (auto c : mc) {
    total += c;
    worst = std::max(worst, std::abs(c - samples * 0.5) / std::sqrt(samples * 0.25));
  }
  const double n = static_cast<double>(samples * bits);
  const double z = std::abs(total - n * 0.5) / std::sqrt(n * 0.25);
  out.passed = exact && z <= 3.0;
  out.detail = fmt::format(
      "exhaustive 2^8 codewords: {}; {} sampled bits, ones fraction {:.5f} (|z| = {:.2f}), "
      "worst per-position |z| = {:.2f}",
      exact ? "128 ones per position" : "unequal counts", samples * bits, total / n, z, worst);
  return out;
}

std::vector<CheckResult> RunVerification(const VerifyOptions& options) {
  return {VerifyExactSum(options), VerifyGreedyOptimality(options), VerifyLmmse(options),
          VerifyBernoulli(options)};
}

}  // namespace aircomp
