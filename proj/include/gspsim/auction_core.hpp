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

#include <Eigen/Dense>

#include <vector>

namespace gspsim {

enum class TieRule {
  // Equal scores go to the higher quality score, then to the lower index.
  HigherQuality,
};

/// Parameters of one weighted GSP slot auction.
///
/// Slots are indexed from 0 (the top slot). The click-through rate of slot s
/// is `top_ctr / ctr_decay^s`, and players are ranked by `quality^q * bid`.
struct AuctionConfig {
  int players = 1;
  int slots = 1;
  double top_ctr = 1.0;
  double ctr_decay = 1.428;
  double q = 1.0;
  TieRule tie_rule = TieRule::HigherQuality;

  /// Config with one slot per player.
  static AuctionConfig full(int players, double q);

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// One realization of private values (per click) and quality scores.
struct TypeProfile {
  Eigen::VectorXd values;
  Eigen::VectorXd qualities;

  TypeProfile() = default;
  TypeProfile(Eigen::VectorXd v, Eigen::VectorXd e)
      : values(std::move(v)), qualities(std::move(e)) {}

  int players() const { return static_cast<int>(values.size()); }
  void validate() const;
};

/// Result of ranking the bidders.
///
/// `ranking` lists every player by descending score; the first
/// `filled_slots` entries hold the slots in order.
struct Allocation {
  std::vector<int> ranking;
  std::vector<int> slot_of;  // -1 for players without a slot
  int filled_slots = 0;

  int occupant(int slot) const { return ranking[slot]; }
  bool slotted(int player) const { return slot_of[player] >= 0; }
};

/// Per-click price charged to the occupant of each filled slot.
using PriceVector = Eigen::VectorXd;

struct RealizedOutcome {
  Eigen::VectorXd utilities;
  double welfare = 0.0;
  double profit = 0.0;
};

double slot_ctr(const AuctionConfig& config, int slot);

/// Ranking weight e^q, with 0^0 = 1.
double weight(double quality, double q);

Allocation rank_bidders(const AuctionConfig& config,
                        const Eigen::Ref<const Eigen::VectorXd>& bids,
                        const Eigen::Ref<const Eigen::VectorXd>& qualities);

PriceVector gsp_prices(const AuctionConfig& config,
                       const Allocation& allocation,
                       const Eigen::Ref<const Eigen::VectorXd>& bids,
                       const Eigen::Ref<const Eigen::VectorXd>& qualities);

RealizedOutcome realized_outcome(const AuctionConfig& config,
                                 const TypeProfile& types,
                                 const Eigen::Ref<const Eigen::VectorXd>& bids);

/// Reusable buffers for the allocation-free simulation path.
struct AuctionScratch {
  std::vector<int> ranking;
  Eigen::VectorXd weights;
  Eigen::VectorXd scores;
  Eigen::VectorXd ctr;  // cached slot CTRs
  int cached_slots = -1;
  double cached_top = 0.0;
  double cached_decay = 0.0;
};

/// Same computation as realized_outcome() without per-call allocations once
/// `scratch` and `out` have been sized by a first call.
void realize_into(const AuctionConfig& config,
                  const Eigen::Ref<const Eigen::VectorXd>& values,
                  const Eigen::Ref<const Eigen::VectorXd>& qualities,
                  const Eigen::Ref<const Eigen::VectorXd>& bids,
                  AuctionScratch& scratch, RealizedOutcome& out);

}  // namespace gspsim
