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

#ifndef AIRCOMP_CHANNEL_HPP_
#define AIRCOMP_CHANNEL_HPP_

// Per-device, per-subcarrier fading gains and the multiple-access channel.
//
// Gains follow a cyclic-delay multipath Rayleigh model,
//   h_{k,l} = sum_m g_{k,m} exp(j 2 pi tau_{k,m} l / L),
// with g_{k,m} ~ CN(0, v_m), sum_m v_m = 1, tau_{k,0} = 0 and the remaining
// delays uniform on {0, ..., L-1}. Estimated CSI is h (1 + Delta) with Delta
// uniform on the open complex disk of radius csi_error_radius.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aircomp/rng.hpp"

namespace aircomp {

using Complex = std::complex<double>;

enum class TapProfile { kUniform, kExponential };

struct ChannelParams {
  int devices = 20;
  int subcarriers = 8;
  int taps = 4;
  TapProfile profile = TapProfile::kUniform;
  double tap_decay = 1.0;  // exponential profile: v_m proportional to exp(-m / decay)
  double noise_power = 1.0;
  double csi_error_radius = 0.0;
  // Per-subcarrier noise powers; when empty, noise_power is used everywhere.
  std::vector<double> noise_powers;

  // Throws ContractViolation on invalid parameters.
  void Validate() const;
  std::vector<double> TapVariances() const;
  double NoisePower(int subcarrier) const;
};

struct MimoParams {
  int tx_antennas = 1;
  int rx_antennas = 1;

  bool IsSiso() const { return tx_antennas == 1 && rx_antennas == 1; }
  friend bool operator==(const MimoParams&, const MimoParams&) = default;
};

// Row-major K x L complex matrix.
class GainMatrix {
 public:
  GainMatrix() = default;
  GainMatrix(int devices, int subcarriers)
      : devices_(devices), subcarriers_(subcarriers),
        data_(static_cast<std::size_t>(devices) * subcarriers) {}

  int devices() const { return devices_; }
  int subcarriers() const { return subcarriers_; }

  Complex& operator()(int k, int l) { return data_[Index(k, l)]; }
  const Complex& operator()(int k, int l) const { return data_[Index(k, l)]; }

  friend bool operator==(const GainMatrix&, const GainMatrix&) = default;

 private:
  std::size_t Index(int k, int l) const {
    return static_cast<std::size_t>(k) * subcarriers_ + l;
  }

  int devices_ = 0;
  int subcarriers_ = 0;
  std::vector<Complex> data_;
};

struct NetworkRealization {
  GainMatrix h;      // true channel
  GainMatrix h_est;  // CSI available to transmitters and receiver
  std::vector<double> noise_power;  // per subcarrier

  int devices() const { return h.devices(); }
  int subcarriers() const { return h.subcarriers(); }

  friend bool operator==(const NetworkRealization&, const NetworkRealization&) = default;
};

// Deterministic given (params, seed).
NetworkRealization DrawChannel(const ChannelParams& params, std::uint64_t seed);

// Same, but every link is an N_r x N_t matrix reduced to an effective scalar
// gain with fixed beamformers: the receive beamformer on each subcarrier is
// the principal left singular vector of sum_k H_{k,l}, and each device
// matches its transmit beamformer to w^H H_{k,l}. Single-antenna
// beamformers are the scalar 1, so MimoParams{1, 1} reproduces DrawChannel
// bit for bit. CSI error is applied to the effective scalar gain.
NetworkRealization DrawMimoChannel(const ChannelParams& params,
                                   const MimoParams& mimo, std::uint64_t seed);

// Uniform sample on the open complex disk of the given radius.
Complex DrawDiskPerturbation(double radius, Rng& rng);

// CN(0, variance) sample.
Complex DrawComplexGaussian(double variance, Rng& rng);

// y = sum_k weight_k * symbol_k + n with n ~ CN(0, noise_power).
Complex MacSuperpose(std::span<const double> symbols,
                     std::span<const Complex> weights, double noise_power,
                     Rng& rng);

// Dense N_r x N_t matrix, row-major.
struct AntennaMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;

  const Complex& operator()(int r, int c) const { return data[r * cols + c]; }
};

// w^H H f. Throws ContractViolation unless ||w|| = ||f|| = 1 within 1e-12
// and dimensions agree.
Complex ScalarizeMimo(const AntennaMatrix& h, std::span<const Complex> w,
                      std::span<const Complex> f);

// Matched transmit beamformer (w^H H)^H / ||w^H H||. Falls back to e_1 when
// w^H H vanishes.
std::vector<Complex> MatchedTransmitBeamformer(const AntennaMatrix& h,
                                               std::span<const Complex> w);

// Principal left singular vector of `sum`, phase-normalized so its first
// nonzero entry is real and positive; the scalar 1 when rows == 1.
std::vector<Complex> PrincipalReceiveBeamformer(const AntennaMatrix& sum);

// Plain-text dump: a header line, then one "k l re_h im_h re_est im_est"
// line per device/subcarrier pair, values printed with 17 significant
// digits.
void WriteRealization(std::ostream& os, const NetworkRealization& net);
NetworkRealization ReadRealization(std::istream& is);

}  // namespace aircomp

#endif  // AIRCOMP_CHANNEL_HPP_
