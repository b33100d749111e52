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

#include "aircomp/transceiver.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "aircomp/codec.hpp"
#include "aircomp/errors.hpp"
#include "aircomp/selection.hpp"

namespace aircomp {
namespace {

void ExpectVectorNear(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12) << i;
}

TEST(AllocatePower, Uniform) {
  ExpectVectorNear(AllocatePower(8, 8, 1.0), std::vector<double>(8, 1.0));
}

TEST(AllocatePower, GeometricDoubling) {
  ExpectVectorNear(AllocatePower(7, 3, 2.0), {1, 2, 4});
}

TEST(AllocatePower, GeometricRatioThree) {
  ExpectVectorNear(AllocatePower(1, 2, 3.0), {0.25, 0.75});
}

TEST(AllocatePower, RejectsRatioBelowOne) {
  EXPECT_THROW(AllocatePower(1, 8, 0.5), ContractViolation);
}

TEST(AllocatePower, ConservesTotalAndIncreases) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double varpi = u(rng), p_max = u(rng);
    const int b = 1 + static_cast<int>(rng() % 16);
    const auto p = AllocatePower(p_max, b, varpi);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), p_max, 1e-9 * p_max);
    EXPECT_NEAR(p[0], p_max * (varpi - 1) / (std::pow(varpi, b) - 1), 1e-12 * p_max);
    for (int l = 1; l < b; ++l) {
      EXPECT_GT(p[l], p[l - 1]);
      EXPECT_NEAR(p[l] / p[l - 1], varpi, 1e-9);
    }
  }
}

TEST(PowerBudget, PerDeviceTotals) {
  PowerBudget budgets(3, 4, 2.0, 2.0);
  for (int k = 0; k < 3; ++k) {
    double sum = 0.0;
    for (int l = 0; l < 4; ++l) sum += budgets(k, l);
    EXPECT_NEAR(sum, 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(budgets.total(k), 2.0);
  }
}

TEST(Preprocess, InactiveIsZero) {
  EXPECT_EQ(Preprocess(Complex(1.0, 2.0), 3.0, false), Complex(0.0, 0.0));
}

TEST(Preprocess, RealGain) {
  const Complex rho = Preprocess(2.0, 4.0, true);
  EXPECT_NEAR(std::abs(rho - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(2.0 * rho - Complex(2.0, 0.0)), 0.0, 1e-15);
}

TEST(Preprocess, ImaginaryGain) {
  const Complex h(0.0, 1.0);
  const Complex rho = Preprocess(h, 1.0, true);
  EXPECT_NEAR(std::abs(rho - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h * rho - 1.0), 0.0, 1e-15);
}

TEST(Preprocess, ZeroGainActiveIsContractViolation) {
  EXPECT_THROW(Preprocess(0.0, 1.0, true), ContractViolation);
}

TEST(Preprocess, PerfectInversionIdentity) {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const Complex h = DrawComplexGaussian(1.0, rng);
    const double p = 0.01 + 10.0 * std::generate_canonical<double, 53>(rng);
    const Complex prod = h * Preprocess(h, p, true);
    EXPECT_NEAR(std::abs(prod - std::sqrt(p)) / std::sqrt(p), 0.0, 1e-12);
  }
}

TEST(TransmitPowerCheck, Cases) {
  GainMatrix h(1, 1);
  h(0, 0) = 2.0;  // |h|^2 = 4
  const PowerBudget budgets(1, 1, 1.0, 1.0);
  EXPECT_TRUE(TransmitPowerCheck(MakePlan({0}, 0.0, 1.0, 1), h, budgets, 0));
  EXPECT_TRUE(TransmitPowerCheck(MakePlan({}, 0.0, 1.0, 1), h, budgets, 0));
  EXPECT_TRUE(TransmitPowerCheck(MakePlan({0}, 4.0, 1.0, 1), h, budgets, 0));
  EXPECT_FALSE(TransmitPowerCheck(MakePlan({0}, 4.01, 1.0, 1), h, budgets, 0));
}

TEST(TransmitPowerCheck, GreedyPlansAreFeasible) {
  ChannelParams params;
  params.devices = 12;
  params.subcarriers = 8;
  params.noise_power = 0.05;
  const PowerBudget budgets(12, 8, 1.0, 2.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto net = DrawChannel(params, seed);
    for (int l = 0; l < 8; ++l) {
      SelectionInstance inst;
      inst.noise_power = 0.05;
      for (int k = 0; k < 12; ++k) inst.effective_gains.push_back(std::norm(net.h(k, l)) * budgets(k, l));
      const auto sel = GreedySelect(inst);
      EXPECT_TRUE(TransmitPowerCheck(MakePlan(sel.active, sel.scaling, 0.05, 12), net.h, budgets, l));
    }
  }
}

TEST(Lmmse, ZeroScalingGivesPriorMean) {
  const auto plan = MakePlan({}, 0.0, 1.0, 6);
  EXPECT_EQ(plan.lambda, 0.0);
  EXPECT_EQ(LmmseDetect(Complex(3.0, 1.0), plan), 3.0);
}

TEST(Lmmse, Coefficients) {
  const auto plan = MakePlan({0, 1, 2, 3}, 1.0, 1.0, 4);
  EXPECT_NEAR(plan.lambda, 4.0 / 9.0, 1e-15);
  EXPECT_EQ(plan.mu, 2.0);
}

TEST(Lmmse, NoiselessLimitRecoversSum) {
  const int K = 8;
  const double p = 2.0;
  std::vector<int> all(K);
  std::iota(all.begin(), all.end(), 0);
  const auto plan = MakePlan(all, p, 1e-12, K);
  for (int r = 0; r <= K; ++r) {
    const double y = 2 * std::sqrt(p) * r - std::sqrt(p) * K;
    EXPECT_NEAR(LmmseDetect(y, plan), r, 1e-9);
    EXPECT_EQ(LmmseDetect(y + 0.1, plan, true), r);
  }
}

TEST(Ml, NoiselessExact) {
  const int K = 5;
  const double p = 0.7;
  const auto plan = MakePlan({0, 1, 2, 3, 4}, p, 1.0, K);
  for (int r = 0; r <= K; ++r) {
    EXPECT_EQ(MlDetect(2 * std::sqrt(p) * r - std::sqrt(p) * K, plan), r);
  }
}

TEST(Ml, TieGoesToLowerIndex) {
  // lattice points -2, 0, 2 for r = 0, 1, 2
  const auto plan = MakePlan({0, 1}, 1.0, 1.0, 2);
  EXPECT_EQ(MlDetect(1.0, plan), 1.0);
  EXPECT_EQ(MlDetect(-1.0, plan), 0.0);
  EXPECT_EQ(MlDetect(1.0001, plan), 2.0);
}

TEST(Ml, TruncatedDevicesAddPriorMean) {
  const auto plan = MakePlan({1}, 1.0, 1.0, 5);
  EXPECT_EQ(MlDetect(1.0, plan), 1.0 + 2.0);
  EXPECT_EQ(MlDetect(-5.0, plan), 0.0 + 2.0);
}

TEST(Ml, WorseThanLmmseWhenNoiseDominates) {
  const int K = 10;
  const double p = 0.01, s2 = 4.0;
  std::vector<int> all(K);
  std::iota(all.begin(), all.end(), 0);
  const auto plan = MakePlan(all, p, s2, K);
  Rng rng(8);
  double ml = 0, lm = 0;
  const int n = 50000;
  std::vector<double> sym(K);
  std::vector<Complex> w(K, std::sqrt(p));
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (auto& s : sym) {
      const int bit = static_cast<int>(rng() & 1U);
      r += bit;
      s = 2.0 * bit - 1.0;
    }
    const Complex y = MacSuperpose(sym, w, s2, rng);
    ml += std::pow(MlDetect(y, plan) - r, 2);
    lm += std::pow(LmmseDetect(y, plan) - r, 2);
  }
  EXPECT_GT(ml / n, lm / n);
  EXPECT_GT(ml / n, MseClosedForm(p, K, K, s2));
}

TEST(MseClosedForm, Values) {
  EXPECT_NEAR(MseClosedForm(4, 2, 3, 1), 19.0 / 68.0, 1e-15);
  EXPECT_DOUBLE_EQ(MseClosedForm(0, 0, 7, 1), 7.0 / 4.0);
  EXPECT_DOUBLE_EQ(MseClosedForm(0, 3, 7, 1), 7.0 / 4.0);
  EXPECT_LT(MseClosedForm(1, 7, 7, 1e-12), 1e-11);
}

TEST(MseClosedForm, MatchesMonteCarlo) {
  const int K = 6, n = 4;
  const double p = 0.5, s2 = 0.8;
  const auto plan = MakePlan({0, 1, 2, 3}, p, s2, K);
  Rng rng(12);
  const int trials = 100000;
  double sum = 0, sum2 = 0;
  std::vector<double> sym(K);
  std::vector<Complex> w(K);
  for (int i = 0; i < trials; ++i) {
    int r = 0;
    for (int k = 0; k < K; ++k) {
      const int bit = static_cast<int>(rng() & 1U);
      r += bit;
      sym[k] = 2.0 * bit - 1.0;
      const Complex h = DrawComplexGaussian(1.0, rng);
      w[k] = h * Preprocess(h, p, k < n);
    }
    const double e = std::pow(LmmseDetect(MacSuperpose(sym, w, s2, rng), plan) - r, 2);
    sum += e;
    sum2 += e * e;
  }
  const double mse = sum / trials;
  const double se = std::sqrt((sum2 / trials - mse * mse) / trials);
  EXPECT_NEAR(mse, MseClosedForm(p, n, K, s2), 3 * se);
}

TEST(EndToEnd, NoiselessGeometricExactSum) {
  // Full pipeline on one network: quantize, encode, invert, superpose, detect, decode.
  const int K = 20, b = 8;
  const auto spec = QuantizerSpec::Make(b, 1.0);
  Rng rng(99);
  std::uniform_real_distribution<double> src(-1.0, 1.0);
  for (double varpi : {1.0, 1.5, 2.0, 3.0}) {
    const PowerBudget budgets(K, b, 1.0, varpi);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Codeword> cws;
      std::int64_t lattice_sum = 0;
      for (int k = 0; k < K; ++k) {
        const auto v = Quantize(src(rng), spec);
        lattice_sum += v;
        cws.push_back(Encode(v, b));
      }
      std::vector<double> r_hat(b);
      for (int l = 0; l < b; ++l) {
        std::vector<Complex> h(K), w(K);
        double p = 1e300;
        for (int k = 0; k < K; ++k) {
          h[k] = DrawComplexGaussian(1.0, rng);
          p = std::min(p, std::norm(h[k]) * budgets(k, l));
        }
        std::vector<int> all(K);
        std::iota(all.begin(), all.end(), 0);
        const auto plan = MakePlan(all, p, 1e-300, K);
        std::vector<double> sym(K);
        for (int k = 0; k < K; ++k) {
          sym[k] = 2.0 * cws[k].bit(l + 1) - 1.0;
          w[k] = h[k] * Preprocess(h[k], p, true);
        }
        r_hat[l] = LmmseDetect(MacSuperpose(sym, w, 0.0, rng), plan, true);
      }
      EXPECT_EQ(Decode(r_hat, 1.0), static_cast<double>(lattice_sum));
    }
  }
}

}  // namespace
}  // namespace aircomp
