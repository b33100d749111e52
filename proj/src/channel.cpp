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

#include "aircomp/channel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "aircomp/errors.hpp"

namespace aircomp {
namespace {

constexpr double kUnitTolerance = 1e-12;

std::vector<Complex> RootsOfUnity(int n) {
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) {
    roots[i] = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
  }
  return roots;
}

// Delays for one device: tau_0 = 0, the rest uniform on {0..L-1}.
void DrawDelays(int taps, int subcarriers, Rng& rng, std::vector<int>& delays) {
  delays.assign(taps, 0);
  std::uniform_int_distribution<int> pick(0, subcarriers - 1);
  for (int m = 1; m < taps; ++m) delays[m] = pick(rng);
}

// Writes the frequency response of one tap set into out[0..L).
void Synthesize(std::span<const Complex> gains, std::span<const int> delays,
                std::span<const Complex> roots, std::span<Complex> out) {
  const int L = static_cast<int>(out.size());
  for (int l = 0; l < L; ++l) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < gains.size(); ++m) {
      acc += gains[m] * roots[(static_cast<long>(delays[m]) * l) % L];
    }
    out[l] = acc;
  }
}

void ApplyCsiError(const ChannelParams& params, Rng& rng, NetworkRealization& net) {
  if (params.csi_error_radius == 0.0) {
    net.h_est = net.h;
    return;
  }
  net.h_est = GainMatrix(net.h.devices(), net.h.subcarriers());
  for (int k = 0; k < net.h.devices(); ++k) {
    for (int l = 0; l < net.h.subcarriers(); ++l) {
      net.h_est(k, l) =
          net.h(k, l) * (1.0 + DrawDiskPerturbation(params.csi_error_radius, rng));
    }
  }
}

double Norm2(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

// Frequency responses for every device and antenna pair, laid out as
// responses[(k * pairs + pair) * L + l]. Per device: delays first, then the
// tap gains of each antenna pair in order.
std::vector<Complex> DrawResponses(const ChannelParams& params, int pairs, Rng& rng) {
  const int K = params.devices;
  const int L = params.subcarriers;
  const int M = params.taps;
  const auto variances = params.TapVariances();
  const auto roots = RootsOfUnity(L);

  std::vector<Complex> responses(static_cast<std::size_t>(K) * pairs * L);
  std::vector<int> delays;
  std::vector<Complex> gains(M);
  for (int k = 0; k < K; ++k) {
    DrawDelays(M, L, rng, delays);
    for (int pair = 0; pair < pairs; ++pair) {
      for (int m = 0; m < M; ++m) gains[m] = DrawComplexGaussian(variances[m], rng);
      Synthesize(gains, delays, roots,
                 std::span(responses).subspan((static_cast<std::size_t>(k) * pairs + pair) * L, L));
    }
  }
  return responses;
}

NetworkRealization EmptyRealization(const ChannelParams& params) {
  NetworkRealization net;
  net.h = GainMatrix(params.devices, params.subcarriers);
  net.noise_power.resize(params.subcarriers);
  for (int l = 0; l < params.subcarriers; ++l) net.noise_power[l] = params.NoisePower(l);
  return net;
}

}  // namespace

void ChannelParams::Validate() const {
  if (devices < 1) throw ContractViolation("channel needs at least one device");
  if (subcarriers < 1) throw ContractViolation("channel needs at least one subcarrier");
  if (taps < 1) throw ContractViolation("channel needs at least one tap");
  if (profile == TapProfile::kExponential && !(tap_decay > 0.0)) {
    throw ContractViolation("exponential tap profile needs a positive decay");
  }
  if (!(csi_error_radius >= 0.0) || !std::isfinite(csi_error_radius)) {
    throw ContractViolation("csi_error_radius must be a finite value >= 0");
  }
  if (noise_powers.empty()) {
    if (!(noise_power > 0.0)) throw ContractViolation("noise power must be positive");
  } else {
    if (static_cast<int>(noise_powers.size()) != subcarriers) {
      throw ContractViolation("need one noise power per subcarrier");
    }
    for (double s : noise_powers) {
      if (!(s > 0.0)) throw ContractViolation("noise power must be positive");
    }
  }
}

std::vector<double> ChannelParams::TapVariances() const {
  std::vector<double> v(taps, 1.0 / taps);
  if (profile == TapProfile::kExponential) {
    double total = 0.0;
    for (int m = 0; m < taps; ++m) total += v[m] = std::exp(-m / tap_decay);
    for (auto& x : v) x /= total;
  }
  return v;
}

double ChannelParams::NoisePower(int subcarrier) const {
  return noise_powers.empty() ? noise_power : noise_powers.at(subcarrier);
}

Complex DrawComplexGaussian(double variance, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Complex DrawDiskPerturbation(double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double phase = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, phase);
}

NetworkRealization DrawChannel(const ChannelParams& params, std::uint64_t seed) {
  params.Validate();
  Rng rng(seed);
  const auto responses = DrawResponses(params, 1, rng);
  auto net = EmptyRealization(params);
  const int L = params.subcarriers;
  for (int k = 0; k < params.devices; ++k) {
    for (int l = 0; l < L; ++l) net.h(k, l) = responses[static_cast<std::size_t>(k) * L + l];
  }
  ApplyCsiError(params, rng, net);
  return net;
}

NetworkRealization DrawMimoChannel(const ChannelParams& params,
                                   const MimoParams& mimo, std::uint64_t seed) {
  params.Validate();
  if (mimo.tx_antennas < 1 || mimo.rx_antennas < 1) {
    throw ContractViolation("antenna counts must be >= 1");
  }
  const int K = params.devices;
  const int L = params.subcarriers;
  const int nr = mimo.rx_antennas;
  const int nt = mimo.tx_antennas;
  const int pairs = nr * nt;

  Rng rng(seed);
  const auto responses = DrawResponses(params, pairs, rng);
  auto net = EmptyRealization(params);

  AntennaMatrix sum{nr, nt, std::vector<Complex>(pairs)};
  std::vector<AntennaMatrix> links(K, AntennaMatrix{nr, nt, std::vector<Complex>(pairs)});
  for (int l = 0; l < L; ++l) {
    std::fill(sum.data.begin(), sum.data.end(), Complex{});
    for (int k = 0; k < K; ++k) {
      for (int pair = 0; pair < pairs; ++pair) {
        const Complex v = responses[(static_cast<std::size_t>(k) * pairs + pair) * L + l];
        links[k].data[pair] = v;
        sum.data[pair] += v;
      }
    }
    const auto w = PrincipalReceiveBeamformer(sum);
    for (int k = 0; k < K; ++k) {
      const auto f = MatchedTransmitBeamformer(links[k], w);
      net.h(k, l) = ScalarizeMimo(links[k], w, f);
    }
  }
  ApplyCsiError(params, rng, net);
  return net;
}

Complex MacSuperpose(std::span<const double> symbols,
                     std::span<const Complex> weights, double noise_power,
                     Rng& rng) {
  if (symbols.size() != weights.size()) {
    throw ContractViolation("symbols and weights must have the same length");
  }
  Complex y{0.0, 0.0};
  for (std::size_t k = 0; k < symbols.size(); ++k) y += weights[k] * symbols[k];
  return y + DrawComplexGaussian(noise_power, rng);
}

Complex ScalarizeMimo(const AntennaMatrix& h, std::span<const Complex> w,
                      std::span<const Complex> f) {
  if (static_cast<int>(w.size()) != h.rows || static_cast<int>(f.size()) != h.cols) {
    throw ContractViolation("beamformer dimensions do not match the channel");
  }
  if (std::abs(Norm2(w) - 1.0) > kUnitTolerance || std::abs(Norm2(f) - 1.0) > kUnitTolerance) {
    throw ContractViolation("beamformers must have unit norm");
  }
  Complex acc{0.0, 0.0};
  for (int r = 0; r < h.rows; ++r) {
    Complex row{0.0, 0.0};
    for (int c = 0; c < h.cols; ++c) row += h(r, c) * f[c];
    acc += std::conj(w[r]) * row;
  }
  return acc;
}

std::vector<Complex> MatchedTransmitBeamformer(const AntennaMatrix& h,
                                               std::span<const Complex> w) {
  if (h.cols == 1) return {Complex{1.0, 0.0}};
  std::vector<Complex> g(h.cols);  // (w^H H)^H
  for (int c = 0; c < h.cols; ++c) {
    Complex acc{0.0, 0.0};
    for (int r = 0; r < h.rows; ++r) acc += std::conj(w[r]) * h(r, c);
    g[c] = std::conj(acc);
  }
  const double norm = std::sqrt(Norm2(g));
  if (norm == 0.0) {
    std::vector<Complex> e(h.cols);
    e[0] = 1.0;
    return e;
  }
  for (auto& x : g) x /= norm;
  return g;
}

std::vector<Complex> PrincipalReceiveBeamformer(const AntennaMatrix& sum) {
  if (sum.rows == 1) return {Complex{1.0, 0.0}};
  Eigen::MatrixXcd a(sum.rows, sum.cols);
  for (int r = 0; r < sum.rows; ++r) {
    for (int c = 0; c < sum.cols; ++c) a(r, c) = sum(r, c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  Eigen::VectorXcd u = svd.matrixU().col(0);
  for (int r = 0; r < u.size(); ++r) {
    if (std::abs(u(r)) > 0.0) {
      u *= std::conj(u(r)) / std::abs(u(r));
      break;
    }
  }
  u.normalize();
  return std::vector<Complex>(u.data(), u.data() + u.size());
}

void WriteRealization(std::ostream& os, const NetworkRealization& net) {
  const auto old_precision = os.precision(17);
  os << "# aircomp-channel devices " << net.devices() << " subcarriers "
     << net.subcarriers() << "\n";
  os << "noise";
  for (double s : net.noise_power) os << ' ' << s;
  os << "\n";
  for (int k = 0; k < net.devices(); ++k) {
    for (int l = 0; l < net.subcarriers(); ++l) {
      const auto& h = net.h(k, l);
      const auto& e = net.h_est(k, l);
      os << k << ' ' << l << ' ' << h.real() << ' ' << h.imag() << ' '
         << e.real() << ' ' << e.imag() << "\n";
    }
  }
  os.precision(old_precision);
}

NetworkRealization ReadRealization(std::istream& is) {
  std::string hash, tag, dev_word, sub_word;
  int K = 0, L = 0;
  if (!(is >> hash >> tag >> dev_word >> K >> sub_word >> L) || hash != "#" ||
      tag != "aircomp-channel" || K < 1 || L < 1) {
    throw ContractViolation("not an aircomp channel dump");
  }
  std::string noise_word;
  if (!(is >> noise_word) || noise_word != "noise") {
    throw ContractViolation("channel dump is missing the noise line");
  }
  NetworkRealization net;
  net.h = GainMatrix(K, L);
  net.h_est = GainMatrix(K, L);
  net.noise_power.resize(L);
  for (auto& s : net.noise_power) {
    if (!(is >> s)) throw ContractViolation("truncated noise line in channel dump");
  }
  for (int i = 0; i < K * L; ++i) {
    int k = 0, l = 0;
    double hr = 0, hi = 0, er = 0, ei = 0;
    if (!(is >> k >> l >> hr >> hi >> er >> ei) || k < 0 || k >= K || l < 0 || l >= L) {
      throw ContractViolation("malformed gain line in channel dump");
    }
    net.h(k, l) = {hr, hi};
    net.h_est(k, l) = {er, ei};
  }
  return net;
}

}  // namespace aircomp
