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

#ifndef AIRCOMP_RNG_HPP_
#define AIRCOMP_RNG_HPP_

#include <cstdint>
#include <random>

namespace aircomp {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for stream `stream` of trial `trial` under a master seed. Runs that
// share (seed, trial) see identical sources, channels and unit noise draws,
// which is what paired comparisons rely on.
constexpr std::uint64_t StreamSeed(std::uint64_t master, std::uint64_t trial,
                                   std::uint64_t stream) {
  return Mix64(Mix64(Mix64(master) ^ trial) ^ stream);
}

enum StreamId : std::uint64_t {
  kSourceStream = 1,
  kChannelStream = 2,
  kNoiseStream = 3,
};

}  // namespace aircomp

#endif  // AIRCOMP_RNG_HPP_
