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

#include "aircomp/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aircomp/errors.hpp"

namespace aircomp {
namespace {

void CheckLength(int length) {
  if (length < 1 || length > kMaxCodewordLength) {
    throw ContractViolation("codeword length must be in [1, " +
                            std::to_string(kMaxCodewordLength) + "], got " +
                            std::to_string(length));
  }
}

}  // namespace

QuantizerSpec::QuantizerSpec(int bits, double s_max, double eps)
    : bits_(bits),
      s_max_(s_max),
      eps_(eps),
      zeta_(std::ldexp(1.0, bits - 1) / (s_max + eps)) {}

QuantizerSpec QuantizerSpec::Make(int bits, double s_max) {
  return Make(bits, s_max, std::ldexp(s_max, -bits - 4));
}

QuantizerSpec QuantizerSpec::Make(int bits, double s_max, double eps) {
  CheckLength(bits);
  if (!(s_max > 0.0) || !std::isfinite(s_max)) {
    throw ContractViolation("quantizer s_max must be positive and finite");
  }
  if (!(eps > 0.0) || !(eps < std::ldexp(s_max, 1 - bits))) {
    throw ContractViolation("quantizer guard eps must lie in (0, 2^(1-b) s_max)");
  }
  return QuantizerSpec(bits, s_max, eps);
}

std::int32_t Quantize(double s, const QuantizerSpec& spec, RangeMode mode) {
  if (std::isnan(s)) throw RangeError("cannot quantize NaN");
  if (mode == RangeMode::kClamp) {
    s = std::clamp(s, -spec.s_max(), spec.s_max());
  } else if (std::abs(s) > spec.s_max()) {
    throw RangeError("source value " + std::to_string(s) +
                     " exceeds quantizer bound " + std::to_string(spec.s_max()));
  }
  const double scaled = std::floor(spec.zeta() * s);
  // |s| <= s_max keeps zeta*s strictly inside (-2^(b-1) - 1, 2^(b-1)).
  return static_cast<std::int32_t>(scaled);
}

Codeword::Codeword(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty() || bits_.size() > 63) {
    throw ContractViolation("codeword length must be in [1, 63]");
  }
  for (auto b : bits_) {
    if (b > 1) throw ContractViolation("codeword bits must be 0 or 1");
  }
}

std::int64_t Codeword::Value() const {
  const int len = length();
  std::int64_t v = 0;
  for (int l = 0; l + 1 < len; ++l) v += std::int64_t{bits_[l]} << l;
  v -= std::int64_t{bits_[len - 1]} << (len - 1);
  return v;
}

std::string Codeword::ToString() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
    out.push_back(*it ? '1' : '0');
  }
  return out;
}

Codeword Codeword::FromString(const std::string& msb_first) {
  std::vector<std::uint8_t> bits;
  bits.reserve(msb_first.size());
  for (auto it = msb_first.rbegin(); it != msb_first.rend(); ++it) {
    if (*it != '0' && *it != '1') {
      throw ContractViolation("codeword string may only contain '0' and '1'");
    }
    bits.push_back(*it == '1');
  }
  return Codeword(std::move(bits));
}

Codeword Encode(std::int64_t v, int length) {
  CheckLength(length);
  const std::int64_t lo = -(std::int64_t{1} << (length - 1));
  const std::int64_t hi = (std::int64_t{1} << (length - 1)) - 1;
  if (v < lo || v > hi) {
    throw RangeError(std::to_string(v) + " is not representable in " +
                     std::to_string(length) + "-bit two's complement");
  }
  const auto u = static_cast<std::uint64_t>(v);
  std::vector<std::uint8_t> bits(length);
  for (int l = 0; l < length; ++l) bits[l] = (u >> l) & 1U;
  return Codeword(std::move(bits));
}

Codeword EncodeUnsigned(std::int64_t v, int length) {
  CheckLength(length);
  if (v < 0 || v >= (std::int64_t{1} << length)) {
    throw RangeError(std::to_string(v) + " is not representable in " +
                     std::to_string(length) + "-bit unsigned binary");
  }
  std::vector<std::uint8_t> bits(length);
  for (int l = 0; l < length; ++l) bits[l] = (v >> l) & 1;
  return Codeword(std::move(bits));
}

std::vector<std::int64_t> SumBitPlanes(std::span<const Codeword> codewords) {
  if (codewords.empty()) return {};
  const int len = codewords.front().length();
  std::vector<std::int64_t> r(len, 0);
  for (const auto& cw : codewords) {
    if (cw.length() != len) {
      throw ContractViolation("all codewords must have the same length");
    }
    const auto bits = cw.bits();
    for (int l = 0; l < len; ++l) r[l] += bits[l];
  }
  return r;
}

double Decode(std::span<const double> r, double zeta) {
  if (r.empty()) throw ContractViolation("decode needs at least one bit-plane");
  if (!(zeta > 0.0)) throw ContractViolation("decode needs zeta > 0");
  const std::size_t last = r.size() - 1;
  double acc = 0.0;
  for (std::size_t l = 0; l < last; ++l) acc += r[l] * std::ldexp(1.0, static_cast<int>(l));
  acc -= r[last] * std::ldexp(1.0, static_cast<int>(last));
  return acc / zeta;
}

std::int64_t DecodeInteger(std::span<const std::int64_t> r) {
  if (r.empty()) throw ContractViolation("decode needs at least one bit-plane");
  const std::size_t last = r.size() - 1;
  std::int64_t acc = 0;
  for (std::size_t l = 0; l < last; ++l) acc += r[l] * (std::int64_t{1} << l);
  acc -= r[last] * (std::int64_t{1} << last);
  return acc;
}

double DecodeUnsigned(std::span<const double> r, double zeta) {
  if (r.empty()) throw ContractViolation("decode needs at least one bit-plane");
  if (!(zeta > 0.0)) throw ContractViolation("decode needs zeta > 0");
  double acc = 0.0;
  for (std::size_t l = 0; l < r.size(); ++l) acc += r[l] * std::ldexp(1.0, static_cast<int>(l));
  return acc / zeta;
}

}  // namespace aircomp
