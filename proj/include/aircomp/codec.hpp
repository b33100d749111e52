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

#ifndef AIRCOMP_CODEC_HPP_
#define AIRCOMP_CODEC_HPP_

// Signed lattice quantizer and two's-complement bit-plane codec.
//
// A b-bit quantizer maps a real source s into the integer lattice
// {-2^(b-1), ..., 2^(b-1)-1} via floor(zeta * s). The integer is written as
// a two's-complement codeword x_1..x_L (LSB first), and the decoder maps
// per-position sums r_l = sum_k x_{k,l} back to the sum of lattice values:
//
//   decode(r) = (sum_{l<L} r_l 2^(l-1) - r_L 2^(L-1)) / zeta.
//
// The decoder is linear, so it also accepts real-valued (detected) sums.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aircomp {

inline constexpr int kMaxCodewordLength = 30;

class QuantizerSpec {
 public:
  // eps defaults to 2^(-b-4) * s_max. Throws ContractViolation when b is
  // outside [1, kMaxCodewordLength], s_max <= 0, or eps is not in
  // (0, 2^(1-b) * s_max).
  static QuantizerSpec Make(int bits, double s_max);
  static QuantizerSpec Make(int bits, double s_max, double eps);

  int bits() const { return bits_; }
  double s_max() const { return s_max_; }
  double eps() const { return eps_; }
  double zeta() const { return zeta_; }

  std::int32_t lattice_min() const { return -(std::int32_t{1} << (bits_ - 1)); }
  std::int32_t lattice_max() const { return (std::int32_t{1} << (bits_ - 1)) - 1; }

  friend bool operator==(const QuantizerSpec&, const QuantizerSpec&) = default;

 private:
  QuantizerSpec(int bits, double s_max, double eps);

  int bits_;
  double s_max_;
  double eps_;
  double zeta_;
};

enum class RangeMode {
  kStrict,  // |s| > s_max throws RangeError
  kClamp,   // saturate s to [-s_max, s_max] first (unbounded sources)
};

// Returns floor(zeta * s) as a lattice integer.
std::int32_t Quantize(double s, const QuantizerSpec& spec,
                      RangeMode mode = RangeMode::kStrict);

// The real value represented by a lattice integer.
inline double Dequantize(std::int32_t v, const QuantizerSpec& spec) {
  return static_cast<double>(v) / spec.zeta();
}

class Codeword {
 public:
  Codeword() = default;
  explicit Codeword(std::vector<std::uint8_t> bits);

  int length() const { return static_cast<int>(bits_.size()); }
  // 1-based position, matching x_1 (LSB) .. x_L (sign bit).
  std::uint8_t bit(int position) const { return bits_.at(position - 1); }
  std::span<const std::uint8_t> bits() const { return bits_; }

  // Signed value under the two's-complement identity.
  std::int64_t Value() const;

  // MSB-first display string (x_L ... x_1), e.g. "1101" for -3 with L = 4.
  std::string ToString() const;
  static Codeword FromString(const std::string& msb_first);

  friend bool operator==(const Codeword&, const Codeword&) = default;

 private:
  std::vector<std::uint8_t> bits_;  // LSB first
};

// Two's-complement encoding of v with L bits. Throws RangeError when v is
// outside [-2^(L-1), 2^(L-1)-1].
Codeword Encode(std::int64_t v, int length);

// Unsigned (offset-binary) encoding of v in [0, 2^L - 1]. Used by the
// binary baseline only.
Codeword EncodeUnsigned(std::int64_t v, int length);

// Per-position sums across devices. All codewords must share one length.
std::vector<std::int64_t> SumBitPlanes(std::span<const Codeword> codewords);

// Bit-plane sums, integer in noiseless operation and real after detection.
struct BitPlaneSums {
  std::vector<double> r;
  int devices = 0;
};

// Linear two's-complement decoder. Throws ContractViolation for an empty r
// or non-positive zeta.
double Decode(std::span<const double> r, double zeta);
inline double Decode(const BitPlaneSums& sums, double zeta) {
  return Decode(sums.r, zeta);
}

// Exact integer form of the decoder with zeta = 1.
std::int64_t DecodeInteger(std::span<const std::int64_t> r);

// Unsigned decoder: sum_l r_l 2^(l-1) / zeta.
double DecodeUnsigned(std::span<const double> r, double zeta);

}  // namespace aircomp

#endif  // AIRCOMP_CODEC_HPP_
