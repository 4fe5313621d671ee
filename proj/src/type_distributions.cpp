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

#include "gspsim/type_distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gspsim {
namespace {

constexpr int kMaxRejections = 1'000'000;

void draw_correlated_pair(const DistributionSpec& spec, Engine& engine, double& value,
                          double& quality) {
  std::lognormal_distribution<double> value_law(spec.lognormal_mu, spec.lognormal_sigma);
  std::normal_distribution<double> noise(0.0, 1.0);
  const bool negative = spec.kind == DistributionKind::NegativeCorrelation;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double v = value_law(engine);
    double e = v + spec.quality_noise_sd * noise(engine);
    if (negative) e = 1.0 - e;
    if (v >= 0.0 && v <= 1.0 && e >= 0.0 && e <= 1.0) {
      value = v;
      quality = e;
      return;
    }
  }
  throw std::runtime_error("correlated type draw rejected too often; check parameters");
}

}  // namespace

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::IndependentUniform: return "independent_uniform";
    case DistributionKind::PositiveCorrelation: return "positive_correlation";
    case DistributionKind::NegativeCorrelation: return "negative_correlation";
    case DistributionKind::ClusteredValues: return "clustered_values";
    case DistributionKind::ConstantValues: return "constant_values";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view text) {
  for (auto kind : {DistributionKind::IndependentUniform, DistributionKind::PositiveCorrelation,
                    DistributionKind::NegativeCorrelation, DistributionKind::ClusteredValues,
                    DistributionKind::ConstantValues}) {
    if (text == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown distribution '" + std::string(text) + "'");
}

void DistributionSpec::validate() const {
  switch (kind) {
    case DistributionKind::IndependentUniform:
      break;
    case DistributionKind::PositiveCorrelation:
    case DistributionKind::NegativeCorrelation:
      if (!std::isfinite(lognormal_mu)) throw std::invalid_argument("lognormal_mu must be finite");
      if (!(lognormal_sigma > 0.0) || !std::isfinite(lognormal_sigma)) {
        throw std::invalid_argument("lognormal_sigma must be positive");
      }
      if (!(quality_noise_sd >= 0.0) || !std::isfinite(quality_noise_sd)) {
        throw std::invalid_argument("quality_noise_sd must be non-negative");
      }
      break;
    case DistributionKind::ClusteredValues:
      if (!(cluster_radius > 0.0 && cluster_radius <= 1.0)) {
        throw std::invalid_argument("cluster_radius must lie in (0, 1]");
      }
      break;
    case DistributionKind::ConstantValues:
      if (!std::isfinite(constant_value) || constant_value < 0.0) {
        throw std::invalid_argument("constant_value must be finite and non-negative");
      }
      break;
  }
}

void sample_profile_into(const DistributionSpec& spec, int players, Engine& engine,
                         TypeProfile& out) {
  if (players < 1) throw std::invalid_argument("players must be positive");
  out.values.resize(players);
  out.qualities.resize(players);
  switch (spec.kind) {
    case DistributionKind::IndependentUniform:
      for (int i = 0; i < players; ++i) {
        out.values[i] = uniform01(engine);
        out.qualities[i] = uniform01(engine);
      }
      break;
    case DistributionKind::PositiveCorrelation:
    case DistributionKind::NegativeCorrelation:
      for (int i = 0; i < players; ++i) {
        draw_correlated_pair(spec, engine, out.values[i], out.qualities[i]);
      }
      break;
    case DistributionKind::ClusteredValues: {
      const double centre = uniform01(engine);
      const double lo = std::max(0.0, centre - spec.cluster_radius);
      const double hi = std::min(1.0, centre + spec.cluster_radius);
      for (int i = 0; i < players; ++i) {
        out.values[i] = lo + (hi - lo) * uniform01(engine);
        out.qualities[i] = uniform01(engine);
      }
      break;
    }
    case DistributionKind::ConstantValues:
      for (int i = 0; i < players; ++i) {
        out.values[i] = spec.constant_value;
        out.qualities[i] = uniform01(engine);
      }
      break;
  }
}

TypeProfile sample_profile(const DistributionSpec& spec, int players, Engine& engine) {
  TypeProfile profile;
  sample_profile_into(spec, players, engine, profile);
  return profile;
}

TypeProfile sample_profile(const DistributionSpec& spec, int players,
                           const SeededStream& stream) {
  spec.validate();
  Engine engine = make_engine(stream);
  return sample_profile(spec, players, engine);
}

}  // namespace gspsim
