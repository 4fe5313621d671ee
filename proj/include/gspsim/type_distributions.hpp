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

#include "gspsim/auction_core.hpp"
#include "gspsim/random.hpp"

#include <string>
#include <string_view>

namespace gspsim {

enum class DistributionKind {
  IndependentUniform,
  PositiveCorrelation,
  NegativeCorrelation,
  ClusteredValues,
  ConstantValues,
};

std::string to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(std::string_view text);

/// Joint law of (value, quality) type profiles.
///
/// Correlated kinds draw a log-normal value and a normal quality centred on
/// it (reflected as 1 - e for the negative kind), resampling the pair until
/// both land in [0, 1]. Clustered values are uniform within `cluster_radius`
/// of a per-profile uniform centre, clipped to [0, 1]. Quality scores are
/// i.i.d. uniform on [0, 1] for every kind except the correlated ones.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::IndependentUniform;
  double lognormal_mu = -1.0;
  double lognormal_sigma = 0.5;
  double quality_noise_sd = 0.05;
  double cluster_radius = 0.1;
  double constant_value = 1.0;

  void validate() const;
};

/// Overwrites `out` (resized to `players`) with one draw.
void sample_profile_into(const DistributionSpec& spec, int players, Engine& engine,
                         TypeProfile& out);

TypeProfile sample_profile(const DistributionSpec& spec, int players, Engine& engine);

/// One draw from the first substream of `stream`.
TypeProfile sample_profile(const DistributionSpec& spec, int players,
                           const SeededStream& stream);

}  // namespace gspsim
