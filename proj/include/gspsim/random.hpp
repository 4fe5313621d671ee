// Copyright 2026 The gspsim Authors.
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gspsim {

using Engine = std::mt19937_64;

/// Monte Carlo draws are grouped into fixed-size chunks, each with its own
/// substream, so results do not depend on how chunks are spread over threads.
inline constexpr std::int64_t kSamplesPerChunk = 256;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);
std::uint64_t hash_string(std::string_view text);

/// A named, reproducible source of randomness. Identical (seed, stream_id)
/// always yields identical draws.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Independent child stream.
  SeededStream child(std::uint64_t tag) const {
    return {seed, hash_combine(stream_id, tag)};
  }
  SeededStream child(std::string_view tag) const { return child(hash_string(tag)); }

  friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

/// Engine for one substream (e.g. a chunk or worker index) of `stream`.
Engine make_engine(const SeededStream& stream, std::uint64_t substream = 0);

inline double uniform01(Engine& engine) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine);
}

}  // namespace gspsim
