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

#include "gspsim/auction_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gspsim {
namespace {

void check_lengths(const AuctionConfig& config, Eigen::Index bids,
                   Eigen::Index qualities) {
  if (bids != config.players || qualities != config.players) {
    throw std::invalid_argument(
        "expected " + std::to_string(config.players) + " bids and qualities, got " +
        std::to_string(bids) + " and " + std::to_string(qualities));
  }
}

void check_bids(const Eigen::Ref<const Eigen::VectorXd>& bids) {
  for (Eigen::Index i = 0; i < bids.size(); ++i) {
    if (!std::isfinite(bids[i]) || bids[i] < 0.0) {
      throw std::invalid_argument("bids must be finite and non-negative");
    }
  }
}

void refresh_ctr(const AuctionConfig& config, AuctionScratch& scratch) {
  if (scratch.cached_slots == config.slots && scratch.cached_top == config.top_ctr &&
      scratch.cached_decay == config.ctr_decay) {
    return;
  }
  scratch.ctr.resize(config.slots);
  for (int s = 0; s < config.slots; ++s) scratch.ctr[s] = slot_ctr(config, s);
  scratch.cached_slots = config.slots;
  scratch.cached_top = config.top_ctr;
  scratch.cached_decay = config.ctr_decay;
}

// Fills scratch.ranking / weights / scores.
void rank_into(const AuctionConfig& config,
               const Eigen::Ref<const Eigen::VectorXd>& bids,
               const Eigen::Ref<const Eigen::VectorXd>& qualities,
               AuctionScratch& scratch) {
  const int m = config.players;
  scratch.weights.resize(m);
  scratch.scores.resize(m);
  for (int i = 0; i < m; ++i) {
    scratch.weights[i] = weight(qualities[i], config.q);
    scratch.scores[i] = scratch.weights[i] * bids[i];
  }
  scratch.ranking.resize(m);
  std::iota(scratch.ranking.begin(), scratch.ranking.end(), 0);
  const auto& score = scratch.scores;
  std::sort(scratch.ranking.begin(), scratch.ranking.end(), [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    if (qualities[a] != qualities[b]) return qualities[a] > qualities[b];
    return a < b;
  });
}

// Price per click for the occupant of `slot`; the next-ranked player (slotted
// or not) sets it.
double slot_price(int slot, const std::vector<int>& ranking,
                  const Eigen::VectorXd& weights, const Eigen::VectorXd& scores) {
  const int next = slot + 1;
  if (next >= static_cast<int>(ranking.size())) return 0.0;
  const double successor = scores[ranking[next]];
  const double own_weight = weights[ranking[slot]];
  if (own_weight == 0.0) {
    if (successor > 0.0) {
      throw std::logic_error("zero-weight occupant ranked above a positive score");
    }
    return 0.0;
  }
  return successor / own_weight;
}

}  // namespace

AuctionConfig AuctionConfig::full(int players, double q) {
  AuctionConfig c;
  c.players = players;
  c.slots = players;
  c.q = q;
  return c;
}

void AuctionConfig::validate() const {
  if (players < 1) throw std::invalid_argument("players must be positive");
  if (slots < 1 || slots > players) {
    throw std::invalid_argument("slots must lie in [1, players]");
  }
  if (!(top_ctr > 0.0) || !std::isfinite(top_ctr)) {
    throw std::invalid_argument("top_ctr must be positive");
  }
  if (!(ctr_decay > 1.0) || !std::isfinite(ctr_decay)) {
    throw std::invalid_argument("ctr_decay must exceed 1");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
}

void TypeProfile::validate() const {
  if (values.size() != qualities.size()) {
    throw std::invalid_argument("values and qualities differ in length");
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("values must be finite and non-negative");
    }
    if (!(qualities[i] >= 0.0 && qualities[i] <= 1.0)) {
      throw std::invalid_argument("quality scores must lie in [0, 1]");
    }
  }
}

double slot_ctr(const AuctionConfig& config, int slot) {
  if (slot < 0 || slot >= config.slots) {
    throw std::out_of_range("slot index " + std::to_string(slot) + " out of range");
  }
  return config.top_ctr / std::pow(config.ctr_decay, slot);
}

double weight(double quality, double q) {
  if (q == 0.0) return 1.0;
  if (q == 1.0) return quality;
  return std::pow(quality, q);
}

Allocation rank_bidders(const AuctionConfig& config,
                        const Eigen::Ref<const Eigen::VectorXd>& bids,
                        const Eigen::Ref<const Eigen::VectorXd>& qualities) {
  config.validate();
  check_lengths(config, bids.size(), qualities.size());
  check_bids(bids);

  AuctionScratch scratch;
  rank_into(config, bids, qualities, scratch);

  Allocation allocation;
  allocation.ranking = std::move(scratch.ranking);
  allocation.filled_slots = std::min(config.slots, config.players);
  allocation.slot_of.assign(config.players, -1);
  for (int s = 0; s < allocation.filled_slots; ++s) {
    allocation.slot_of[allocation.ranking[s]] = s;
  }
  return allocation;
}

PriceVector gsp_prices(const AuctionConfig& config, const Allocation& allocation,
                       const Eigen::Ref<const Eigen::VectorXd>& bids,
                       const Eigen::Ref<const Eigen::VectorXd>& qualities) {
  config.validate();
  check_lengths(config, bids.size(), qualities.size());
  if (static_cast<int>(allocation.ranking.size()) != config.players) {
    throw std::invalid_argument("allocation does not rank every player");
  }
  Eigen::VectorXd weights(config.players);
  Eigen::VectorXd scores(config.players);
  for (int i = 0; i < config.players; ++i) {
    weights[i] = weight(qualities[i], config.q);
    scores[i] = weights[i] * bids[i];
  }
  PriceVector prices(allocation.filled_slots);
  for (int s = 0; s < allocation.filled_slots; ++s) {
    prices[s] = slot_price(s, allocation.ranking, weights, scores);
  }
  return prices;
}

RealizedOutcome realized_outcome(const AuctionConfig& config, const TypeProfile& types,
                                 const Eigen::Ref<const Eigen::VectorXd>& bids) {
  config.validate();
  types.validate();
  check_lengths(config, bids.size(), types.qualities.size());
  check_lengths(config, types.values.size(), types.qualities.size());
  check_bids(bids);
  AuctionScratch scratch;
  RealizedOutcome out;
  realize_into(config, types.values, types.qualities, bids, scratch, out);
  return out;
}

void realize_into(const AuctionConfig& config,
                  const Eigen::Ref<const Eigen::VectorXd>& values,
                  const Eigen::Ref<const Eigen::VectorXd>& qualities,
                  const Eigen::Ref<const Eigen::VectorXd>& bids,
                  AuctionScratch& scratch, RealizedOutcome& out) {
  refresh_ctr(config, scratch);
  rank_into(config, bids, qualities, scratch);

  out.utilities.setZero(config.players);
  out.welfare = 0.0;
  out.profit = 0.0;
  const int filled = std::min(config.slots, config.players);
  for (int s = 0; s < filled; ++s) {
    const int player = scratch.ranking[s];
    const double price = slot_price(s, scratch.ranking, scratch.weights, scratch.scores);
    const double clicks = qualities[player] * scratch.ctr[s];
    const double value = clicks * values[player];
    const double paid = clicks * price;
    out.utilities[player] = value - paid;
    out.welfare += value;
    out.profit += paid;
  }
}

}  // namespace gspsim
